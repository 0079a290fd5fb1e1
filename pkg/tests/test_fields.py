"""Field tower construction, arithmetic, Frobenius, subfields, normal bases."""

import pytest

from rmcodes import (
    DependentVector,
    DivisionByZero,
    DoesNotDivide,
    NotPrime,
    NotPrimitiveModulus,
    ReducibleModulus,
    find_normal_element,
    frobenius,
    is_normal,
    make_tower,
    normal_basis_from,
    parse_element,
    parse_field_spec,
    power_basis,
    subfield,
)


def polymul_mod(a, b, modulus, p):
    """Test-local oracle: dense polynomial product reduced modulo modulus."""
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    deg = len(modulus) - 1
    while len(out) > deg:
        lead = out.pop()
        if lead:
            for i in range(deg):
                out[-deg + i] = (out[-deg + i] - lead * modulus[i]) % p
    while len(out) < deg:
        out.append(0)
    return out


class TestMakeTower:
    def test_f16_worked_modulus(self, f16):
        assert f16.modulus == (1, 1, 0, 0, 1)
        # generator is a root of the modulus: w^4 = 1 + w
        w = f16.generator
        assert w**4 == f16.one + w

    def test_f64_worked_modulus(self, f64):
        assert f64.order == 64
        assert f64.mult_order == 63

    def test_not_prime(self):
        with pytest.raises(NotPrime):
            make_tower(4, 1, 2)

    def test_reducible_modulus(self):
        with pytest.raises(ReducibleModulus):
            make_tower(2, 1, 4, [1, 0, 0, 0, 1])  # (1+t)^4

    def test_irreducible_but_not_primitive(self):
        # t^4+t^3+t^2+t+1 divides t^5-1, so its root has order 5
        with pytest.raises(NotPrimitiveModulus):
            make_tower(2, 1, 4, [1, 1, 1, 1, 1])
        tower = make_tower(2, 1, 4, [1, 1, 1, 1, 1], require_primitive=False)
        gen = tower.generator
        assert all((gen**k).code != 1 for k in range(1, 15))
        assert (gen**15).code == 1

    def test_default_modulus_is_lex_least(self):
        # candidates below [1,1,0,0,1] fail: 1+t^4 = (1+t)^4 and t+t^4 = t(1+t^3)
        # are reducible, so the first primitive candidate is the worked-example
        # polynomial itself.
        tower = make_tower(2, 1, 4)
        assert tower.modulus == (1, 1, 0, 0, 1)

    def test_interning(self):
        assert make_tower(2, 1, 4) is make_tower(2, 1, 4)


class TestArith:
    def test_inverse_axiom_all_nonzero(self, f16):
        for x in f16.elements():
            if x.code:
                assert (x * x.inverse()).code == 1

    def test_exponent_arithmetic_matches_repeated_multiplication(self, f16):
        # oracle: build w^5 and w^10 by repeated polynomial multiplication
        mod = list(f16.modulus)
        acc = [1, 0, 0, 0]
        powers = {}
        for k in range(1, 16):
            acc = polymul_mod(acc, [0, 1, 0, 0], mod, 2)
            powers[k] = tuple(acc)
        w = f16.generator
        assert (w**5).coeffs == powers[5]
        assert (w**10).coeffs == powers[10]
        assert (w**5 * w**10).code == 1

    def test_division_by_zero(self, f16):
        with pytest.raises(DivisionByZero):
            f16.one / f16.zero
        with pytest.raises(DivisionByZero):
            f16.zero.inverse()

    def test_negative_powers(self, f16):
        w = f16.generator
        assert w**-1 == w.inverse()
        assert w**-3 == (w**3).inverse()

    def test_tower_mismatch(self, f16, f4):
        from rmcodes import TowerMismatch
        with pytest.raises(TowerMismatch):
            f16.one + f4.one


class TestFrobenius:
    def test_fixes_one(self, f16):
        for r in range(8):
            assert frobenius(f16.one, r) == f16.one

    def test_square_in_coefficient_form(self, f16):
        # oracle: square w^5 directly as a polynomial
        mod = list(f16.modulus)
        w5 = (f16.generator**5).coeffs
        sq = tuple(polymul_mod(list(w5), list(w5), mod, 2))
        assert frobenius(f16.generator**5, 1).coeffs == sq
        assert frobenius(f16.generator**5, 1) == f16.generator**10

    def test_f64_normal_basis_listing(self, f64):
        # the published normal-basis chain: squaring steps 38 -> 13 -> 26 -> ...
        assert frobenius(f64.gen_power(38), 1) == f64.gen_power(13)
        assert frobenius(f64.gen_power(13), 1) == f64.gen_power(26)

    def test_ring_homomorphism_exhaustive(self, f16):
        for x in f16.elements():
            assert frobenius(x, f16.degree) == x
            for y in f16.elements():
                assert frobenius(x * y, 1) == frobenius(x, 1) * frobenius(y, 1)
                assert frobenius(x + y, 1) == frobenius(x, 1) + frobenius(y, 1)

    def test_generator_order_exact(self, f81):
        n = f81.mult_order
        for ell in (2, 5):  # prime factors of 80
            assert (f81.generator ** (n // ell)).code != 1


class TestSubfield:
    def test_prime_subfield(self, f16):
        assert [x.code for x in subfield(f16, 1)] == [0, 1]

    def test_f4_inside_f16(self, f16):
        w = f16.generator
        assert set(subfield(f16, 2)) == {f16.zero, f16.one, w**5, w**10}

    def test_f8_inside_f64_fixed_points(self, f64):
        # oracle: fixed-point scan of x -> x^8 over all 64 elements
        fixed = {x for x in f64.elements() if frobenius(x, 3) == x}
        assert len(fixed) == 8
        assert set(subfield(f64, 3)) == fixed

    def test_does_not_divide(self, f16):
        with pytest.raises(DoesNotDivide):
            subfield(f16, 3)

    def test_closure(self, f64):
        for d in (1, 2, 3):
            els = set(subfield(f64, d))
            for x in els:
                for y in els:
                    assert x + y in els
                    assert x * y in els

    def test_sigma_q_power_m_is_identity(self, f16_q4):
        # sigma_q = frobenius(., e); its m-th power fixes everything
        for x in f16_q4.elements():
            assert frobenius(x, f16_q4.e * f16_q4.m) == x


class TestNormalElements:
    def test_f4_generator_is_normal(self, f4):
        # oracle: det of the 2x2 coefficient matrix of (w, w^2) over F_2
        w = f4.generator
        rows = [w.coeffs, (w**2).coeffs]
        det = (rows[0][0] * rows[1][1] + rows[0][1] * rows[1][0]) % 2
        assert det == 1
        assert find_normal_element(f4) == w

    def test_f16_checker_agrees_with_rank(self, f16):
        # oracle: direct rank of the 4x4 F_2 matrix of Frobenius iterates
        def f2_rank(rows):
            rows = [list(r) for r in rows]
            rank = 0
            for col in range(4):
                piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
                if piv is None:
                    continue
                rows[rank], rows[piv] = rows[piv], rows[rank]
                for i in range(len(rows)):
                    if i != rank and rows[i][col]:
                        rows[i] = [(a + b) % 2 for a, b in zip(rows[i], rows[rank])]
                rank += 1
            return rank

        for k in range(15):
            x = f16.gen_power(k)
            iterates = [x.coeffs, (x**2).coeffs, (x**4).coeffs, (x**8).coeffs]
            assert is_normal(x) == (f2_rank(iterates) == 4)

    def test_f64_published_normal_element(self, f64):
        assert is_normal(f64.gen_power(38))
        assert not is_normal(f64.generator)
        assert find_normal_element(f64) == f64.gen_power(3)

    def test_normal_basis_from_rejects(self, f64):
        with pytest.raises(DependentVector):
            normal_basis_from(f64.generator)


class TestTextForms:
    def test_field_spec_round_trip(self, f16):
        assert parse_field_spec(f16.spec_string()) is f16
        assert parse_field_spec("gf(2,1,4)") is make_tower(2, 1, 4)

    def test_element_round_trip(self, f16):
        for x in f16.elements():
            assert parse_element(f16, str(x)) == x
        assert parse_element(f16, "poly:[1,1]") == f16.one + f16.generator
        assert str(f16.zero) == "0"
        assert str(f16.one) == "g^0"

    def test_power_basis(self, f16):
        b = power_basis(f16)
        assert [x.code for x in b] == [1, 2, 4, 8]
