import json

import pytest

from monocat.algmod import (Algebra, Bimodule, Module, ModuleMap,
                            StructureError, hom_basis)
from monocat.fixtures import (FixtureError, bundled_watts_fixtures,
                              dual_numbers_f2, fixture_from_json,
                              graded_sign, graded_trivial, resolve_fixture,
                              strict_f3_z2, watts_fixture_from_json,
                              watts_fixture_to_json)
from monocat.linalg import (Field, VectorSpace, compose, compose_all,
                            identity, make_map, rank, solve_iso)
from monocat.watts import (ExactSequence, GradedTensor, MalformedTensor,
                           NotBalanced, NotNatural, StrictTensor,
                           TransportedTensor, WattsContext, _collapse_regular,
                           check_monoidal_axioms, check_rigidity,
                           check_T_coherence, flip_cocycle,
                           induce_natural_family, is_three_cocycle,
                           nat_to_bimodule_hom, sign_cocycle,
                           tensor_with_bimodule, trivial_cocycle,
                           verify_embedding, verify_monoidal_functor)


@pytest.fixture(scope="module")
def fx_strict():
    return strict_f3_z2()


@pytest.fixture(scope="module")
def fx_sign():
    return graded_sign()


@pytest.fixture(scope="module")
def wc_strict(fx_strict):
    return WattsContext(fx_strict.ct)


@pytest.fixture(scope="module")
def wc_sign(fx_sign):
    return WattsContext(fx_sign.ct)


class TestCocycles:
    def test_bundled_are_cocycles(self):
        assert is_three_cocycle(trivial_cocycle())
        assert is_three_cocycle(sign_cocycle())

    def test_single_flip_breaks_condition(self):
        assert not is_three_cocycle(flip_cocycle(trivial_cocycle(), (0, 1, 0)))

    def test_top_flip_exchanges_the_two_cocycles(self):
        assert flip_cocycle(trivial_cocycle(), (1, 1, 1)) == sign_cocycle()


class TestGuards:
    def test_graded_rejects_char_two(self):
        A = Algebra.group_algebra(Field(2), 2)
        with pytest.raises(MalformedTensor):
            GradedTensor(A, Module.regular(A), trivial_cocycle())

    def test_graded_rejects_wrong_dimension(self):
        A = Algebra.group_algebra(Field(3), 3)
        with pytest.raises(MalformedTensor):
            GradedTensor(A, Module.regular(A), trivial_cocycle())

    def test_strict_rejects_noncommutative(self):
        with pytest.raises(StructureError):
            StrictTensor(upper_triangular(Field(3)))

    def test_bad_sequence_rejected(self, fx_strict):
        R = fx_strict.module("R")
        Sp = fx_strict.module("Sp")
        Sm = fx_strict.module("Sm")
        f = ModuleMap(Sm, R, make_map(Sm.space, R.space, [[1], [-1]]))
        g = ModuleMap(R, Sp, make_map(R.space, Sp.space, [[1, 1]]))
        # claiming short-exactness of a complex whose f is zero must fail
        zf = ModuleMap(Sm, R, make_map(Sm.space, R.space, [[0], [0]]))
        with pytest.raises(StructureError):
            ExactSequence("bad", "short-exact", zf, g).check()
        ExactSequence("good", "short-exact", f, g).check()


class TestMonoidalAxioms:
    def test_strict_sample_passes(self, fx_strict):
        rep = check_monoidal_axioms(fx_strict.ct, fx_strict.sample)
        assert rep.ok and len(rep.results) > 300

    def test_graded_sign_passes(self, fx_sign):
        assert check_monoidal_axioms(fx_sign.ct, fx_sign.sample).ok

    def test_flipped_cocycle_fails_pentagon_with_witness(self, fx_sign):
        bad = GradedTensor(fx_sign.algebra, fx_sign.module("I"),
                           flip_cocycle(sign_cocycle(), (0, 1, 0)),
                           name="flipped")
        rep = check_monoidal_axioms(bad, fx_sign.sample)
        pent = [r for r in rep.failures if r.name.startswith("pentagon")]
        assert pent
        assert {"lhs", "rhs"} <= set(pent[0].witness)


class TestTransport:
    def test_T_has_three_commuting_actions(self, wc_strict, wc_sign):
        wc_strict.T.check()
        wc_sign.T.check()
        # R ⊗_R R collapses to R; the graded product of R with itself does not
        assert wc_strict.T.space.dim == 2
        assert wc_sign.T.space.dim == 4

    def test_T_coherence(self, wc_strict, wc_sign):
        assert check_T_coherence(wc_strict).ok
        assert check_T_coherence(wc_sign).ok

    def test_mu_nu_inverse_pair(self, wc_strict):
        for X in (wc_strict.R, ):
            nu, mu = wc_strict.nu(X), wc_strict.mu(X)
            assert compose(nu, mu).matrix == identity(nu.target).matrix

    def test_twisted_transported_associator_not_identity(self, wc_sign):
        R = wc_sign.R
        a = wc_sign.alpha_prime(R, R, R)
        assert a.matrix != identity(a.source).matrix

    def test_c_is_iso(self, wc_strict, fx_strict):
        for X in fx_strict.sample:
            for Y in fx_strict.sample:
                c = wc_strict.c_iso(X, Y)
                assert rank(c) == c.source.dim == c.target.dim

    def test_transported_structure_is_monoidal(self, wc_strict, fx_strict):
        tt = TransportedTensor(wc_strict)
        sample = [fx_strict.module("R"), fx_strict.module("Sm")]
        assert check_monoidal_axioms(tt, sample).ok


class TestFunctor:
    def test_strict_functor_coherence(self, wc_strict, fx_strict):
        rep = verify_monoidal_functor(wc_strict, fx_strict.sample)
        assert rep.ok
        names = {r.name.split("[")[0] for r in rep.results}
        assert {"xi-iso", "functor-pentagon", "functor-unit-left",
                "functor-unit-right"} <= names

    def test_omega_lands_in_bimodules(self, wc_strict, fx_strict):
        for X in fx_strict.sample:
            om = wc_strict.omega(X)
            assert isinstance(om, Bimodule)
            om.check()


class TestEmbedding:
    def test_strict_embedding_faithful_and_exact(self, wc_strict, fx_strict):
        rep = verify_embedding(wc_strict, fx_strict.sample,
                               fx_strict.sequences)
        assert rep.ok
        summary = [r for r in rep.results if r.name == "flatness-summary"]
        assert summary and summary[0].witness == {"inexact": []}

    def test_dual_numbers_flatness_failure(self):
        fx = dual_numbers_f2()
        wc = WattsContext(fx.ct)
        rep = verify_embedding(wc, fx.sample, fx.sequences)
        assert rep.ok  # flatness entries are informational
        summary = [r for r in rep.results if r.name == "flatness-summary"][0]
        assert ["C-R-C", "C"] in summary.witness["inexact"]


class TestRigidity:
    @pytest.mark.parametrize("build", [graded_trivial, graded_sign])
    def test_bundled_duality_data_passes(self, build):
        fx = build()
        assert fx.rigidity
        for r in fx.rigidity:
            assert check_rigidity(fx.ct, r.obj, r.dual, r.ev, r.db).ok

    def test_wrong_sign_db_fails_snake(self, fx_sign):
        r = [d for d in fx_sign.rigidity if d.obj.name == "L"][0]
        bad_db = ModuleMap(r.db.source, r.db.target,
                           make_map(r.db.lin.source, r.db.lin.target, [[1]]))
        rep = check_rigidity(fx_sign.ct, r.obj, r.dual, r.ev, bad_db)
        assert not rep.ok
        assert {f.name for f in rep.failures} & {"snake-X", "snake-Xdual"}


def upper_triangular(field):
    """Upper-triangular 2x2 matrices: the smallest noncommutative algebra."""
    sp = VectorSpace(field, ("e11", "e12", "e22"))
    z = sp.zero_vector()
    e = sp.basis_vector
    mult = ((e(0), e(1), z),
            (z, z, e(1)),
            (z, z, e(2)))
    one = tuple((field.one if i in (0, 2) else field.zero) for i in range(3))
    alg = Algebra("UT2", sp, mult, one)
    alg.check()
    return alg


class TestNaturalFamilies:
    def test_induce_then_extract_roundtrip(self, fx_strict):
        A = fx_strict.algebra
        P = Bimodule.regular(A)
        Q = Bimodule.regular(A)
        modules = [Module.regular(A), fx_strict.module("Sm")]
        for lin in hom_basis(P, Q):
            f = ModuleMap(P, Q, lin)
            fam = induce_natural_family(f, modules)
            back = nat_to_bimodule_hom(P, Q, fam)
            assert back.lin.matrix == f.lin.matrix

    def test_corrupted_component_not_natural(self, fx_strict):
        A = fx_strict.algebra
        P = Bimodule.regular(A)
        f = ModuleMap(P, P, hom_basis(P, P)[0])
        modules = [Module.regular(A), fx_strict.module("Sm")]
        fam = induce_natural_family(f, modules)
        M = modules[1]
        fam[M] = make_map(fam[M].source, fam[M].target,
                          [[v.value + 1 for v in row]
                           for row in fam[M].matrix])
        with pytest.raises(NotNatural):
            nat_to_bimodule_hom(P, P, fam)

    def test_missing_regular_module_rejected(self, fx_strict):
        A = fx_strict.algebra
        P = Bimodule.regular(A)
        f = ModuleMap(P, P, hom_basis(P, P)[0])
        fam = induce_natural_family(f, [fx_strict.module("Sm")])
        with pytest.raises(NotNatural):
            nat_to_bimodule_hom(P, P, fam)

    def test_one_sided_family_not_balanced(self):
        # over a noncommutative algebra, a family built from a map that is
        # left- but not right-linear passes every naturality square on the
        # single-module sample yet must be rejected at extraction
        A = upper_triangular(Field(3))
        P = Bimodule.regular(A)
        R = Module.regular(A)
        phi = A.right_mult_matrix(1)  # ·e12: left-linear, not right-linear
        uP = _collapse_regular(P)
        comp = compose_all(uP, phi, solve_iso(uP))
        with pytest.raises(NotBalanced):
            nat_to_bimodule_hom(P, P, {R: comp})


class TestFixtureSerialization:
    def test_roundtrip_all_bundled(self):
        for name, fx in bundled_watts_fixtures().items():
            j = watts_fixture_to_json(fx)
            back = watts_fixture_from_json(json.loads(json.dumps(j)))
            assert watts_fixture_to_json(back) == j, name

    def test_unknown_kind_rejected(self):
        with pytest.raises(FixtureError):
            fixture_from_json({"kind": "mystery"})

    def test_unknown_name_rejected(self):
        with pytest.raises(FixtureError):
            resolve_fixture("no-such-fixture")

    def test_bad_cocycle_loads_but_fails_checks(self):
        j = watts_fixture_to_json(graded_sign())
        for row in j["tensor"]["cocycle"]:
            if row[:3] == [0, 1, 0]:
                row[3] = -row[3]
        fx = watts_fixture_from_json(j)  # must not raise
        assert not is_three_cocycle(fx.ct.cocycle)
        assert not check_monoidal_axioms(fx.ct, fx.sample).ok
