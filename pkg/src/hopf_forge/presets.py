"""Built-in presented quantum groups and their pairing.

The deformation parameter q is the square of the field generator s, so that
the half powers of q appearing in the pairing stay inside the field.  The
quantized enveloping algebra uses the symmetric coproduct with generator
order K < Kinv < E < F; the quantized function algebra orders b < bs < a < as
so that every relation rewrites decreasingly.
"""

from __future__ import annotations

from .definition import PairingDefinition, PresentationDefinition
from .scalars import SC_ONE, SC_ZERO, Scalar

ONE = SC_ONE


def _sp(k: int) -> Scalar:
    return Scalar.s_power(k)


def uq_su2() -> PresentationDefinition:
    """Quantized enveloping algebra of su(2) with q = s^2."""
    q = _sp(2)
    qi = _sp(-2)
    # 1/(q - q^(-1)) = s^2/(s^4 - 1)
    c = _sp(2) * (_sp(4) - ONE).inverse()
    rules = [
        (("K", "Kinv"), [(ONE, ())]),
        (("Kinv", "K"), [(ONE, ())]),
        (("E", "K"), [(qi, ("K", "E"))]),
        (("E", "Kinv"), [(q, ("Kinv", "E"))]),
        (("F", "K"), [(q, ("K", "F"))]),
        (("F", "Kinv"), [(qi, ("Kinv", "F"))]),
        (("F", "E"), [(ONE, ("E", "F")),
                      (-c, ("K", "K")),
                      (c, ("Kinv", "Kinv"))]),
    ]
    coproduct = {
        "K": [(ONE, ("K",), ("K",))],
        "Kinv": [(ONE, ("Kinv",), ("Kinv",))],
        "E": [(ONE, ("E",), ("K",)), (ONE, ("Kinv",), ("E",))],
        "F": [(ONE, ("F",), ("K",)), (ONE, ("Kinv",), ("F",))],
    }
    counit = {"K": ONE, "Kinv": ONE, "E": SC_ZERO, "F": SC_ZERO}
    antipode = {
        "K": [(ONE, ("Kinv",))],
        "Kinv": [(ONE, ("K",))],
        "E": [(-_sp(2), ("E",))],
        "F": [(-_sp(-2), ("F",))],
    }
    star = {
        "K": [(ONE, ("K",))],
        "Kinv": [(ONE, ("Kinv",))],
        "E": [(ONE, ("F",))],
        "F": [(ONE, ("E",))],
    }
    actions = {
        "modular": {"K": ONE, "Kinv": ONE, "E": _sp(4), "F": _sp(-4)},
    }
    return PresentationDefinition(
        name="uq-su2",
        description="quantized enveloping algebra of su(2), q = s^2",
        generators=["K", "Kinv", "E", "F"],
        rules=rules,
        coproduct=coproduct,
        counit=counit,
        antipode=antipode,
        star=star,
        diagonal_actions=actions,
    )


def suq2() -> PresentationDefinition:
    """Quantized function algebra of SU(2) with q = s^2."""
    q = _sp(2)
    qi = _sp(-2)
    rules = [
        (("a", "b"), [(q, ("b", "a"))]),
        (("a", "bs"), [(q, ("bs", "a"))]),
        (("as", "b"), [(qi, ("b", "as"))]),
        (("as", "bs"), [(qi, ("bs", "as"))]),
        (("bs", "b"), [(ONE, ("b", "bs"))]),
        (("as", "a"), [(ONE, ()), (-_sp(-4), ("b", "bs"))]),
        (("a", "as"), [(ONE, ()), (-ONE, ("b", "bs"))]),
    ]
    coproduct = {
        "a": [(ONE, ("a",), ("a",)), (-qi, ("b",), ("bs",))],
        "b": [(ONE, ("a",), ("b",)), (ONE, ("b",), ("as",))],
        "as": [(ONE, ("as",), ("as",)), (-qi, ("bs",), ("b",))],
        "bs": [(ONE, ("as",), ("bs",)), (ONE, ("bs",), ("a",))],
    }
    counit = {"a": ONE, "as": ONE, "b": SC_ZERO, "bs": SC_ZERO}
    antipode = {
        "a": [(ONE, ("as",))],
        "as": [(ONE, ("a",))],
        "b": [(-qi, ("b",))],
        "bs": [(-q, ("bs",))],
    }
    star = {
        "a": [(ONE, ("as",))],
        "as": [(ONE, ("a",))],
        "b": [(ONE, ("bs",))],
        "bs": [(ONE, ("b",))],
    }
    actions = {
        "modular": {"a": _sp(-4), "as": _sp(4), "b": ONE, "bs": ONE},
        "scaling": {"a": ONE, "as": ONE, "b": _sp(-4), "bs": _sp(4)},
        "kappa": {"a": _sp(4), "as": _sp(-4), "b": _sp(-4), "bs": _sp(4)},
    }
    return PresentationDefinition(
        name="suq2",
        description="quantized function algebra of SU(2), q = s^2",
        generators=["b", "bs", "a", "as"],
        rules=rules,
        coproduct=coproduct,
        counit=counit,
        antipode=antipode,
        star=star,
        diagonal_actions=actions,
    )


def pairing_uqsu2_suq2() -> PairingDefinition:
    """The canonical pairing between the two built-in presentations."""
    z = SC_ZERO
    table = {
        ("K", "a"): _sp(-1), ("K", "as"): _sp(1),
        ("K", "b"): z, ("K", "bs"): z,
        ("Kinv", "a"): _sp(1), ("Kinv", "as"): _sp(-1),
        ("Kinv", "b"): z, ("Kinv", "bs"): z,
        ("E", "a"): z, ("E", "as"): z,
        ("E", "b"): z, ("E", "bs"): -_sp(2),
        ("F", "a"): z, ("F", "as"): z,
        ("F", "b"): ONE, ("F", "bs"): z,
    }
    return PairingDefinition(
        name="pairing-uqsu2-suq2",
        description="evaluation pairing between uq-su2 and suq2",
        rows=uq_su2(),
        cols=suq2(),
        table=table,
        # counit after kappa acts by pairing against Kinv^4
        action_functionals=[("kappa", ("Kinv", "Kinv", "Kinv", "Kinv"))],
    )


PRESET_BUILDERS = {
    "uq-su2": uq_su2,
    "suq2": suq2,
    "pairing-uqsu2-suq2": pairing_uqsu2_suq2,
}
