#include "cubix/selftest.hpp"

#include <set>

#include "cubix/enriched.hpp"
#include "cubix/error.hpp"
#include "cubix/simplicial.hpp"

namespace cubix {

namespace {

void run(std::vector<NamedCheck>& out, const std::string& name, const std::function<bool()>& fn) {
    bool ok = false;
    try {
        ok = fn();
    } catch (const Error&) {
        ok = false;
    }
    out.push_back({name, ok});
}

// every listed relation, checked on a representable (the Yoneda embedding is
// faithful, so path-action agreement there is function-level agreement)
bool relations_sound(int top) {
    for (Flavor flavor : {Flavor::reduced, Flavor::connections}) {
        PshPtr rep = cubical_representable(flavor, std::min(top, 3), std::min(top, 3));
        for (const auto& r : cubical_site(flavor).relations(rep->trunc()))
            for (int c = 0; c < rep->cells(r.start_dim); ++c)
                if (rep->act_path(r.start_dim, r.lhs, c) != rep->act_path(r.start_dim, r.rhs, c))
                    return false;
    }
    return true;
}

} // namespace

std::vector<NamedCheck> selftest_cube(bool quick) {
    std::vector<NamedCheck> out;
    const int dim_cap = quick ? 3 : 4;
    run(out, "relation soundness under evaluation", [&] {
        return relations_sound(quick ? 4 : 5);
    });
    run(out, "normal forms are pairwise distinct under eval", [&] {
        for (Flavor f : {Flavor::reduced, Flavor::connections})
            for (int m = 0; m <= dim_cap; ++m)
                for (int n = 0; n <= dim_cap; ++n) {
                    std::set<std::vector<std::uint32_t>> seen;
                    for (const auto& w : enumerate_homs(f, m, n))
                        if (!seen.insert(eval(w).table()).second) return false;
                }
        return true;
    });
    run(out, "normalize is idempotent and eval-preserving", [&] {
        for (Flavor f : {Flavor::reduced, Flavor::connections})
            for (int m = 0; m <= 2; ++m)
                for (int n = 0; n <= 2; ++n)
                    for (const auto& v : enumerate_homs(f, m, n))
                        for (const auto& u : enumerate_homs(f, n, std::min(n + 1, 2))) {
                            std::vector<Gen> letters = u.letters();
                            const auto tail = v.letters();
                            letters.insert(letters.end(), tail.begin(), tail.end());
                            const CubeWord nf = normalize_raw(f, m, letters);
                            if (!(eval(nf) == eval_raw(f, m, letters))) return false;
                            if (!(normalize_raw(f, m, nf.letters()) == nf)) return false;
                        }
        return true;
    });
    run(out, "tensor interchange", [&] {
        const Flavor f = Flavor::connections;
        for (const auto& a : enumerate_homs(f, 0, 1))
            for (const auto& b : enumerate_homs(f, 1, 1))
                for (const auto& c : enumerate_homs(f, 1, 0))
                    for (const auto& d : enumerate_homs(f, 1, 1))
                        if (!(compose(tensor_word(d, c), tensor_word(a, b))
                              == tensor_word(compose(d, a), compose(c, b))))
                            return false;
        return true;
    });
    run(out, "the failing symmetry square", [&] {
        CubeWord d0(Flavor::reduced, 0, {{0, 0}}, {}, {});
        CubeWord id1 = CubeWord::identity(Flavor::reduced, 1);
        return !(eval(tensor_word(d0, id1)) == eval(tensor_word(id1, d0)));
    });
    run(out, "factorize round trip", [&] {
        for (Flavor f : {Flavor::reduced, Flavor::connections})
            for (int m = 0; m <= 2; ++m)
                for (int n = 0; n <= 2; ++n)
                    for (const auto& w : enumerate_homs(f, m, n)) {
                        auto back = factorize(eval(w), f);
                        if (!back || !(*back == w)) return false;
                    }
        return true;
    });
    return out;
}

std::vector<NamedCheck> selftest_presheaf(bool quick) {
    std::vector<NamedCheck> out;
    const int n_top = quick ? 2 : 3;
    run(out, "constructors pass the relation validator", [&] {
        for (Flavor f : {Flavor::reduced, Flavor::connections})
            for (int n = 0; n <= n_top; ++n) {
                cubical_representable(f, n, n_top)->validate();
                cubical_boundary(f, n, n_top).object->validate();
                if (n >= 1) cubical_cap(f, n, 0, 0, n_top).object->validate();
            }
        return true;
    });
    run(out, "Yoneda cell counts", [&] {
        for (Flavor f : {Flavor::reduced, Flavor::connections}) {
            auto bd = cubical_boundary(f, 2, 2);
            for (PshPtr x : {cubical_representable(f, 1, 2), bd.object})
                for (int n = 0; n <= 2; ++n)
                    if (hom_maps(cubical_representable(f, n, 2), x).size()
                        != static_cast<std::size_t>(x->cells(n)))
                        return false;
        }
        return true;
    });
    run(out, "Day tensor unit and representability", [&] {
        for (Flavor f : {Flavor::reduced, Flavor::connections}) {
            PshPtr unit = cubical_representable(f, 0, 2);
            PshPtr edge = cubical_representable(f, 1, 2);
            DayTensor t(edge, unit);
            if (!find_isomorphism(t.object(), edge)) return false;
            DayTensor t2(edge, edge);
            if (!find_isomorphism(t2.object(), cubical_representable(f, 2, 2))) return false;
        }
        return true;
    });
    run(out, "boundary decomposition at the square", [&] {
        for (Flavor f : {Flavor::reduced, Flavor::connections}) {
            auto bd1 = cubical_boundary(f, 1, 2);
            PshPtr box1 = cubical_representable(f, 1, 2);
            DayTensor a(bd1.object, bd1.object);
            DayTensor x(bd1.object, box1);
            DayTensor y(box1, bd1.object);
            PresheafMap ax = day_tensor_map(a, x, identity_map(bd1.object), bd1.inclusion);
            PresheafMap ay = day_tensor_map(a, y, bd1.inclusion, identity_map(bd1.object));
            auto po = pushout(ax, ay);
            if (!find_isomorphism(po.object, cubical_boundary(f, 2, 2).object)) return false;
        }
        return true;
    });
    run(out, "pushout-product of boundary inclusions is monic", [&] {
        const Flavor f = Flavor::connections;
        auto bd1 = cubical_boundary(f, 1, 2);
        PshPtr box1 = cubical_representable(f, 1, 2);
        DayTensor a(bd1.object, bd1.object);
        DayTensor x(bd1.object, box1);
        DayTensor y(box1, bd1.object);
        DayTensor full(box1, box1);
        PresheafMap ax = day_tensor_map(a, x, identity_map(bd1.object), bd1.inclusion);
        PresheafMap ay = day_tensor_map(a, y, bd1.inclusion, identity_map(bd1.object));
        auto po = pushout(ax, ay);
        PresheafMap i1 = day_tensor_map(x, full, bd1.inclusion, identity_map(box1));
        PresheafMap i2 = day_tensor_map(y, full, identity_map(box1), bd1.inclusion);
        return is_mono(pushout_induced(po, i1, i2));
    });
    return out;
}

std::vector<NamedCheck> selftest_simplicial(bool quick) {
    std::vector<NamedCheck> out;
    (void)quick;
    run(out, "standard objects pass the identity validator", [&] {
        simplex(2, 3)->validate();
        simplicial_boundary(2, 3).object->validate();
        simplicial_horn(2, 1, 3).object->validate();
        nerve_of_category(FinCategory::chain(2), 3)->validate();
        return true;
    });
    run(out, "triangulation of the square", [&] {
        Triangulation l2(cubical_representable(Flavor::connections, 2, 2));
        return l2.object()->nondegenerate_count(0) == 4 && l2.object()->nondegenerate_count(1) == 5
               && l2.object()->nondegenerate_count(2) == 2;
    });
    run(out, "triangulation is strong monoidal on small representables", [&] {
        const Flavor f = Flavor::connections;
        DayTensor t(cubical_representable(f, 1, 2), cubical_representable(f, 1, 2));
        Triangulation lt(t.object());
        Triangulation l1(cubical_representable(f, 1, 2));
        return find_isomorphism(lt.object(), sset_product(l1.object(), l1.object())).has_value();
    });
    run(out, "adjunction bijection on a small case", [&] {
        const Flavor f = Flavor::connections;
        PshPtr x = cubical_representable(f, 1, 2);
        PshPtr y = simplex(1, 2);
        Triangulation lx(x);
        return hom_maps(lx.object(), y).size() == hom_maps(x, cubical_singular(y, f, 2)).size();
    });
    return out;
}

std::vector<NamedCheck> selftest_chain(bool quick) {
    std::vector<NamedCheck> out;
    run(out, "interval axioms over Z and F2", [&] {
        for (Ring ring : {Ring::Z(), Ring::Fp(2)})
            for (const auto& c : interval_axioms_C1(ring))
                if (!c.passed) return false;
        return true;
    });
    run(out, "coalgebra axioms over Z and F2", [&] {
        for (Ring ring : {Ring::Z(), Ring::Fp(2)})
            for (const auto& c : coalgebra_check_C1(ring))
                if (!c.passed) return false;
        return true;
    });
    run(out, "realized representables are contractible", [&] {
        const int top = quick ? 2 : 3;
        for (int n = 0; n <= top; ++n) {
            ChainRealization lr(cubical_representable(Flavor::connections, n, std::max(1, n)),
                                Ring::Z());
            const auto h = homology(*lr.object());
            if (h[0].free_rank != 1 || !h[0].torsion.empty()) return false;
            for (std::size_t k = 1; k < h.size(); ++k)
                if (h[k].free_rank != 0 || !h[k].torsion.empty()) return false;
        }
        return true;
    });
    run(out, "circle homology via Smith normal form", [&] {
        auto bd = cubical_boundary(Flavor::connections, 2, 2);
        ChainRealization lr(bd.object, Ring::Z());
        const auto h = homology(*lr.object());
        return h[0].free_rank == 1 && h[1].free_rank == 1 && h[1].torsion.empty();
    });
    run(out, "dg-singular counts over F2", [&] {
        const Ring f2 = Ring::Fp(2);
        if (dg_singular(c1_power(f2, 1), 1)->cells(0) != 4) return false;
        PshPtr zero = dg_singular(zero_complex(f2, 1), 1);
        return zero->cells(0) == 1 && zero->cells(1) == 1;
    });
    return out;
}

std::vector<NamedCheck> selftest_enriched(bool quick) {
    std::vector<NamedCheck> out;
    const int wtop = quick ? 2 : 3;
    run(out, "W categories validate", [&] {
        for (int n = 0; n <= wtop; ++n) W(n, std::max(0, n - 1))->validate();
        return true;
    });
    run(out, "cosimplicial identity sample", [&] {
        CubicalFunctor lhs = functor_compose(W_coface(2, 1, 1), W_coface(0, 0, 1));
        CubicalFunctor rhs = functor_compose(W_coface(0, 1, 1), W_coface(1, 0, 1));
        if (!functors_equal(lhs, rhs)) return false;
        CubicalFunctor l2 = functor_compose(W_codegeneracy(0, 1, 1), W_coface(0, 0, 1));
        return l2.object_map == std::vector<int>{0};
    });
    run(out, "nerve agrees with the classical nerve on [2]", [&] {
        const FinCategory c = FinCategory::chain(2);
        CatPtr ic = discrete_enrich(c, Flavor::connections, 2);
        return find_isomorphism(hc_nerve(ic, quick ? 2 : 3), nerve_of_category(c, quick ? 2 : 3))
            .has_value();
    });
    run(out, "nerve levels match functor enumeration", [&] {
        CatPtr i1 = discrete_enrich(FinCategory::chain(1), Flavor::connections, 1);
        for (int k = 0; k <= 2; ++k)
            if (static_cast<std::size_t>(hc_nerve(i1, 2)->cells(k))
                != enumerate_functors(W(k, 1), i1).size())
                return false;
        return true;
    });
    run(out, "inner horns of a nerve fill", [&] {
        CatPtr i2 = discrete_enrich(FinCategory::chain(2), Flavor::connections, 2);
        PshPtr nerve = hc_nerve(i2, 3);
        return inner_horn_fill_probe(nerve, 2, 1).unfillable == 0;
    });
    return out;
}

std::vector<NamedCheck> selftest_all(bool quick) {
    std::vector<NamedCheck> out;
    auto absorb = [&](const char* prefix, std::vector<NamedCheck> v) {
        for (auto& c : v) out.push_back({std::string(prefix) + ": " + c.name, c.passed});
    };
    absorb("cube", selftest_cube(quick));
    absorb("presheaf", selftest_presheaf(quick));
    absorb("simplicial", selftest_simplicial(quick));
    absorb("chain", selftest_chain(quick));
    absorb("enriched", selftest_enriched(quick));
    return out;
}

} // namespace cubix
