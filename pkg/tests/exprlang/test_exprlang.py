import math

import pytest
from hypothesis import given, settings, strategies as st

from beurlab import DomainError
from beurlab.exprlang import (
    ExprError,
    ExprNode,
    LexError,
    ParseError,
    UnboundParamError,
    compile_expression,
    eval_expr,
    free_parameters,
    parse,
    parse_expression,
    to_source,
    tokenize,
)


def test_tokenize_segments_source():
    # Action
    tokens = tokenize("0.5*x + sqrt(x)")

    # Assert
    assert [(t.kind, t.text) for t in tokens] == [
        ("number", "0.5"),
        ("operator", "*"),
        ("identifier", "x"),
        ("operator", "+"),
        ("identifier", "sqrt"),
        ("lparen", "("),
        ("identifier", "x"),
        ("rparen", ")"),
    ]
    assert tokens[0].value == 0.5
    positions = [t.position for t in tokens]
    assert positions == sorted(set(positions))
    assert tokens[3].position == 6


@pytest.mark.parametrize("src, value", [("1e3", 1000.0), ("2.5E-1", 0.25), (".5", 0.5), ("7.", 7.0)])
def test_tokenize_number_forms(src: str, value: float):
    # Action
    tokens = tokenize(src)

    # Assert
    assert len(tokens) == 1
    assert tokens[0].kind == "number"
    assert tokens[0].value == value


@pytest.mark.parametrize(
    "src, position",
    [("0..5", 2), ("1.2.3", 3), ("2x", 1), ("x $ 1", 2), ("", 0), ("   ", 0)],
)
def test_tokenize_errors_carry_position(src: str, position: int):
    # Assert
    with pytest.raises(LexError) as info:
        tokenize(src)
    assert info.value.position == position
    assert f"position {position}" in str(info.value)


@pytest.mark.parametrize(
    "src, x, expected",
    [
        ("x+2*x", 2.0, 6.0),
        ("-x^2", 3.0, -9.0),
        ("2^-x", 1.0, 0.5),
        ("2^3^2", 1.0, 512.0),
        ("(1+x)/(1-x)", 0.5, 3.0),
        ("8/2/2", 0.0, 2.0),
        ("+x - -x", 1.5, 3.0),
    ],
)
def test_precedence(src: str, x: float, expected: float):
    # Action
    node = parse_expression(src)

    # Assert
    assert eval_expr(node, x) == pytest.approx(expected, rel=1e-15)


def test_parse_tree_shape():
    # Action
    node = parse_expression("x+2*x")

    # Assert
    assert node.variant == "binary_op"
    assert node.name == "+"
    assert node.children[0] == ExprNode("variable_x")
    assert node.children[1].name == "*"
    assert parse(tokenize("x+2*x")) == node


@pytest.mark.parametrize(
    "src, position, expected",
    [
        ("H(1, x)", 3, (")",)),
        ("x+", 2, ("number", "identifier", "(", "-", "+")),
        ("(x", 2, (")",)),
        ("x x", 2, ("operator", "end of input")),
        ("sqrt x", 5, ("(",)),
        (")", 0, ("number", "identifier", "(", "-", "+")),
    ],
)
def test_parse_errors_carry_position_and_expected(src: str, position: int, expected: tuple[str, ...]):
    # Assert
    with pytest.raises(ParseError) as info:
        parse_expression(src)
    assert info.value.position == position
    assert info.value.expected == expected


def test_every_input_parses_or_fails_with_a_position():
    # Setup
    sources = ["", "((", "1e", "x^", "min(x)", "pow(x, 2, 3)", "log(x))", "a b c", ",", "é"]

    # Assert
    for src in sources:
        with pytest.raises(ExprError) as info:
            parse_expression(src)
        assert isinstance(info.value.position, int)


def test_eval_examples():
    # Assert
    assert eval_expr(parse_expression("0.5*x+sqrt(x)"), 4.0) == 4.0
    assert eval_expr(parse_expression("eta(x)"), 3.0, {"rho": 1.0}) == 4.0
    assert eval_expr(parse_expression("H(x)"), 0.7, {"gamma": 0.0}) == pytest.approx(0.7)
    assert eval_expr(parse_expression("Krg(x)"), 1.0, {"rho": 1.0, "gamma": 0.0}) == pytest.approx(math.log(2.0))
    assert eval_expr(parse_expression("pi*e"), 0.0) == pytest.approx(math.pi * math.e)
    assert eval_expr(parse_expression("pow(x, 3) + min(x, 1) + max(x, 1)"), 2.0) == 11.0


def test_indicator_is_closed_on_both_ends():
    # Setup
    node = parse_expression("indicator(0, 1)")

    # Assert
    assert [eval_expr(node, x) for x in (-0.1, 0.0, 0.5, 1.0, 1.1)] == [0.0, 1.0, 1.0, 1.0, 0.0]


@pytest.mark.parametrize(
    "src, x, params",
    [
        ("log(x)", 0.0, {}),
        ("sqrt(x)", -1.0, {}),
        ("1/(x-1)", 1.0, {}),
        ("exp(x)", 1000.0, {}),
        ("0^-1", 0.0, {}),
        ("Krg(x)", -2.0, {"rho": 1.0, "gamma": 0.5}),
    ],
)
def test_eval_domain_errors(src: str, x: float, params: dict[str, float]):
    # Assert
    with pytest.raises(DomainError):
        eval_expr(parse_expression(src), x, params)


def test_unbound_parameters():
    # Assert
    with pytest.raises(UnboundParamError):
        eval_expr(parse_expression("a*x"), 1.0)
    with pytest.raises(UnboundParamError) as info:
        compile_expression("a*x + b + eta(x)", {"a": 1.0})
    assert "b" in str(info.value)
    assert "rho" in str(info.value)
    assert free_parameters(parse_expression("a*Krg(x) + pi")) == {"a", "pi", "rho", "gamma"}


def test_compile_expression_binds_parameters_and_domain():
    # Action
    func = compile_expression("k*log(x)", {"k": 2.0}, lower=0.0)

    # Assert
    assert func(math.e) == pytest.approx(2.0)
    assert func.name == "k*log(x)"
    assert not func.contains(0.0)
    with pytest.raises(DomainError):
        func(-1.0)


def test_compile_expression_closed_lower():
    # Action
    func = compile_expression("sqrt(x)", lower=0.0, closed_lower=True, name="root")

    # Assert
    assert func(0.0) == 0.0
    assert func.name == "root"


_PARAMETERS = st.sampled_from(["a", "b", "k"])
_CONSTANTS = st.one_of(
    st.integers(min_value=0, max_value=10**6).map(float),
    st.sampled_from([0.5, 0.25, 1e-3, 2.5e10, 1e300]),
)


def _nodes() -> st.SearchStrategy[ExprNode]:
    leaves = st.one_of(
        _CONSTANTS.map(lambda v: ExprNode("constant", value=v)),
        st.just(ExprNode("variable_x")),
        _PARAMETERS.map(lambda n: ExprNode("parameter", name=n)),
    )

    def extend(children: st.SearchStrategy[ExprNode]) -> st.SearchStrategy[ExprNode]:
        return st.one_of(
            children.map(lambda c: ExprNode("negate", (c,))),
            st.tuples(st.sampled_from(["+", "-", "*", "/", "^"]), children, children).map(
                lambda t: ExprNode("binary_op", (t[1], t[2]), name=t[0])
            ),
            st.tuples(st.sampled_from(["sqrt", "log", "sin", "eta"]), children).map(
                lambda t: ExprNode("call", (t[1],), name=t[0])
            ),
            st.tuples(st.sampled_from(["min", "pow", "indicator"]), children, children).map(
                lambda t: ExprNode("call", (t[1], t[2]), name=t[0])
            ),
        )

    return st.recursive(leaves, extend, max_leaves=12)


@given(_nodes())
@settings(max_examples=200)
def test_pretty_print_is_a_fixed_point(node: ExprNode):
    # Action
    printed = to_source(node)
    reparsed = parse_expression(printed)

    # Assert
    assert reparsed == node
    assert to_source(reparsed) == printed


def _leaf_pairs():
    return st.one_of(
        st.floats(min_value=-5.0, max_value=5.0).map(
            lambda v: (ExprNode("constant", value=abs(v)), lambda x, v=abs(v): v)
        ),
        st.just((ExprNode("variable_x"), lambda x: x)),
    )


def _extend_pairs(children):
    unary = {"negate": lambda a: -a, "sin": math.sin, "cos": math.cos, "abs": abs}
    binary = {"+": lambda a, b: a + b, "-": lambda a, b: a - b, "*": lambda a, b: a * b}
    calls = {"min": min, "max": max}

    def make_unary(t):
        name, (node, f) = t
        op = unary[name]
        if name == "negate":
            return ExprNode("negate", (node,)), lambda x: op(f(x))
        return ExprNode("call", (node,), name=name), lambda x: op(f(x))

    def make_binary(t):
        name, (left, f), (right, g) = t
        if name in calls:
            op = calls[name]
            return ExprNode("call", (left, right), name=name), lambda x: op(f(x), g(x))
        op = binary[name]
        return ExprNode("binary_op", (left, right), name=name), lambda x: op(f(x), g(x))

    return st.one_of(
        st.tuples(st.sampled_from(sorted(unary)), children).map(make_unary),
        st.tuples(st.sampled_from(sorted(binary) + sorted(calls)), children, children).map(make_binary),
    )


@given(st.recursive(_leaf_pairs(), _extend_pairs, max_leaves=10), st.floats(min_value=-10.0, max_value=10.0))
@settings(max_examples=100)
def test_eval_agrees_with_direct_composition(pair, x: float):
    # Setup
    node, reference = pair

    # Action
    value = eval_expr(node, x)

    # Assert
    assert math.isclose(value, reference(x), rel_tol=1e-14, abs_tol=1e-14)
