"""도함수 텐서 테스트"""

from fractions import Fraction

import numpy as np
import pytest

from src.deriv import (
    DerivativeTensor,
    VectorFunction,
    derivative_first_layout,
    derivative_order,
    derivative_step,
    eval_tensor,
    hessian,
    jacobian,
    point_from_values,
)
from src.errors import ShapeMismatchError, UndeclaredVariableError
from src.expr import Const, VarSpace, expr_equal, parse, to_string
from src.fd_oracle import FDConfig, as_evaluable, fd_gradient
from src.generators import random_polynomial, random_tensor_function
from src.tensor import Domain, Tensor

XS = VarSpace.of("x1", "x2")
YS = VarSpace.of("y1", "y2")


def rational(values):
    return Tensor.from_nested(values, Domain.RATIONAL)


def strings(t):
    return [to_string(e) for e in t.values.flat()]


class TestVectorFunction:

    def test_undeclared_component_variable(self):
        with pytest.raises(UndeclaredVariableError):
            VectorFunction((parse("y1", YS),), XS)

    def test_scalar_has_single_component(self):
        with pytest.raises(ShapeMismatchError):
            VectorFunction(tuple(XS.variables()), XS, scalar=True)

    def test_value_tensor(self):
        g = VectorFunction.parse(["x1", "x1^2 - x2"], XS)
        assert g.value_tensor().shape == (2,)
        assert VectorFunction.parse(["x1*x2"], XS, scalar=True).value_tensor().rank == 0
        assert g.evaluate({"x1": 2, "x2": 1}) == [2, 3]


class TestDerivativeStep:

    def test_gradient_of_bilinear(self):
        f = VectorFunction.parse(["x1*x2"], XS, scalar=True)
        grad = derivative_step(DerivativeTensor.of_function(f))
        assert grad.shape == (2,)
        assert strings(grad) == ["x2", "x1"]
        assert (grad.value_axes, grad.deriv_axes) == (0, 1)

    def test_constant_tensor_gives_zeros(self):
        constant = Tensor.from_nested([[1, 2], [3, 4]]).to_symbolic()
        step = derivative_step(DerivativeTensor(constant, 2, 0, XS))
        assert step.shape == (2, 2, 2)
        assert all(e == Const(0) for e in step.values.flat())

    def test_new_axis_is_last(self, rng):
        t = random_tensor_function(XS, (3,), 2, rng)
        step = derivative_step(DerivativeTensor(t, 1, 0, XS))
        assert step.shape == (3, 2)
        for i in range(3):
            for j, name in enumerate(XS):
                assert expr_equal(step[i, j], t[i].polynomial.derivative(name).to_expr())

    def test_twice_is_symmetric(self):
        f = VectorFunction.parse(["x1^3*x2 + x2^2"], XS, scalar=True)
        t = derivative_step(derivative_step(DerivativeTensor.of_function(f)))
        assert t.shape == (2, 2)
        assert t.is_symmetric()


class TestJacobian:

    def test_reparametrization(self):
        g = VectorFunction.parse(["x1", "x1^2 - x2"], XS)
        assert strings(jacobian(g)) == ["1", "0", "2*x1", "-1"]

    def test_identity_map(self):
        g = VectorFunction(tuple(XS.variables()), XS)
        assert eval_tensor(jacobian(g), {"x1": 5, "x2": 7}).equals(Tensor.identity(2))

    def test_linear_map(self):
        g = VectorFunction.parse(["2*x1 + 3*x2", "-x1 + 4*x2", "x2"], XS)
        assert eval_tensor(jacobian(g), {"x1": 0, "x2": 0}).equals(rational([[2, 3], [-1, 4], [0, 1]]))


class TestDerivativeOrder:

    def test_rosenbrock_hessian_in_y(self):
        f = VectorFunction.parse(["(1 - y1)^2 + 100*(y1^2 - y2)^2"], YS, scalar=True)
        h = derivative_order(f, 2)
        assert h.shape == (2, 2)
        assert expr_equal(h[0, 0], parse("1200*y1^2 - 400*y2 + 2", YS))
        assert expr_equal(h[0, 1], parse("-400*y1", YS))
        assert expr_equal(h[1, 0], parse("-400*y1", YS))
        assert h[1, 1] == Const(200)

    def test_reparametrization_second_order(self):
        g = VectorFunction.parse(["x1", "x1^2 - x2"], XS)
        t = derivative_order(g, 2)
        assert t.shape == (2, 2, 2)
        for index in np.ndindex(2, 2, 2):
            expected = 2 if index == (1, 0, 0) else 0
            assert t[index] == Const(expected)

    def test_first_order_is_jacobian(self):
        g = VectorFunction.parse(["x1*x2", "x2^2"], XS)
        assert derivative_order(g, 1).values.equals(jacobian(g).values)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_shape_law(self, k):
        us = VarSpace.of("u1", "u2", "u3")
        g = VectorFunction.parse(["u1*u2*u3", "u1^3"], us)
        assert derivative_order(g, k).shape == (2,) + (3,) * k

    def test_order_must_be_positive(self):
        g = VectorFunction.parse(["x1"], XS)
        with pytest.raises(ValueError):
            derivative_order(g, 0)

    def test_symmetry_randomized(self, rng):
        for _ in range(20):
            f = VectorFunction((random_polynomial(XS, 4, rng),), XS, scalar=True)
            assert derivative_order(f, 3).is_symmetric()


class TestHessian:

    def test_sum_of_squares(self):
        f = VectorFunction.parse(["x1^2 + x2^2"], XS, scalar=True)
        assert strings(hessian(f)) == ["2", "0", "0", "2"]

    def test_composed_rosenbrock(self):
        f = VectorFunction.parse(["(1 - x1)^2 + 100*x2^2"], XS, scalar=True)
        assert strings(hessian(f)) == ["2", "0", "0", "200"]

    def test_bilinear(self):
        f = VectorFunction.parse(["x1*x2"], XS)
        assert strings(hessian(f)) == ["0", "1", "1", "0"]

    def test_multi_component_rejected(self):
        g = VectorFunction.parse(["x1", "x2"], XS)
        with pytest.raises(ShapeMismatchError):
            hessian(g)


class TestEvalTensor:

    def test_jacobian_at_point(self):
        g = VectorFunction.parse(["x1", "x1^2 - x2"], XS)
        assert eval_tensor(jacobian(g), {"x1": 1, "x2": 1}).equals(rational([[1, 0], [2, -1]]))

    def test_zero_tensor(self):
        zero = DerivativeTensor(Tensor.zeros((2, 2), Domain.SYMBOLIC), 0, 2, XS)
        assert eval_tensor(zero, {"x1": 3, "x2": -1}).equals(Tensor.zeros((2, 2)))

    def test_float_point(self):
        f = VectorFunction.parse(["x1*x2"], XS, scalar=True)
        value = eval_tensor(derivative_order(f, 1), point_from_values(XS, [0.5, 2], as_float=True))
        assert value.domain is Domain.FLOAT
        np.testing.assert_allclose(np.asarray(value.array, dtype=float), [2.0, 0.5])

    def test_step_matches_finite_differences(self, rng):
        cfg = FDConfig(h=1e-4)
        for _ in range(10):
            e = random_polynomial(XS, 3, rng, coeff_range=3)
            f = VectorFunction((e,), XS, scalar=True)
            point = [rng.uniform(-1, 1), rng.uniform(-1, 1)]
            exact = eval_tensor(derivative_order(f, 1), point_from_values(XS, point, as_float=True))
            approx = fd_gradient(as_evaluable(e, XS), point, cfg)
            np.testing.assert_allclose(
                np.asarray(exact.array, dtype=float), approx.array, rtol=1e-6, atol=1e-6
            )


class TestLayout:

    def test_derivative_first_layout(self):
        g = VectorFunction.parse(["x1", "x1^2 - x2"], XS)
        t = derivative_order(g, 2)
        moved = derivative_first_layout(t)
        for i, j, k in np.ndindex(2, 2, 2):
            assert moved[k, j, i] == t[i, j, k]

    def test_json_round_trip(self):
        g = VectorFunction.parse(["x1*x2", "1/2*x1^2"], XS)
        t = jacobian(g)
        payload = t.to_json()
        assert payload["value_axes"] == 1
        assert payload["deriv_axes"] == 1
        assert payload["vars"] == ["x1", "x2"]
        assert payload["data"] == ["x2", "x1", "x1", "0"]
        restored = DerivativeTensor.from_json(payload)
        assert restored.values.equals(t.values)
        assert restored.domain_vars == XS

    def test_invalid_axes(self):
        with pytest.raises(ShapeMismatchError):
            DerivativeTensor(Tensor.zeros((2, 3), Domain.SYMBOLIC), 1, 1, XS)
        with pytest.raises(ShapeMismatchError):
            DerivativeTensor(Tensor.zeros((2,), Domain.SYMBOLIC), 0, 2, XS)
        with pytest.raises(ShapeMismatchError):
            DerivativeTensor(Tensor.zeros((2,)), 0, 1, XS)

    def test_rational_point_is_exact(self):
        f = VectorFunction.parse(["x1^2*x2"], XS, scalar=True)
        value = eval_tensor(hessian(f), {"x1": Fraction(1, 3), "x2": Fraction(1, 2)})
        assert value[0, 0] == Fraction(1)
        assert value[0, 1] == Fraction(2, 3)
