"""Smoke test for the pyhomprop extension: run after `pip install crates/python`."""

import json

import pyhomprop

DUAL = json.dumps({"space": {"dims": {"0": 2}}, "maps": {"mu": [[1, 0, 0, 0], [0, 1, 1, 0]]}})
FLIP = json.dumps(
    {"space": {"dims": {"0": 2}}, "maps": {"B": [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]}}
)


def main():
    assert "bialgebra" in pyhomprop.builtin_names()

    assoc = pyhomprop.Presentation.builtin("as")
    assert assoc.is_normal()
    assert assoc.unit_count() == 2
    assert assoc.relations() == ["mu ∘ (mu ⊗ 1) - mu ∘ (1 ⊗ mu)"]
    again = pyhomprop.Presentation.from_json(assoc.to_json())
    assert again.to_json() == assoc.to_json()

    dual = pyhomprop.Algebra.from_json(DUAL, assoc)
    ok, report = dual.check(assoc)
    assert ok, report

    twisted, hom_as = pyhomprop.hom_twist(dual, "[[1, 0], [0, 2]]", assoc, "multiplicative")
    assert hom_as.is_homified()
    assert twisted.check(hom_as)[0]
    for n in (1, 2, 3):
        assert pyhomprop.derived(twisted, hom_as, n).check(hom_as)[0]

    try:
        pyhomprop.hom_twist(dual, "[[2, 0], [0, 1]]", assoc)
    except pyhomprop.PreconditionError as e:
        assert "morphism" in str(e)
    else:
        raise AssertionError("a non-morphism must be refused")

    ybe = pyhomprop.Presentation.builtin("ybe")
    flip = pyhomprop.Algebra.from_json(FLIP, ybe)
    twisted, hom_ybe = pyhomprop.hom_twist(flip, "[[1, 1], [0, 1]]", ybe)
    assert twisted.check(hom_ybe)[0]

    hom_bi = pyhomprop.Presentation.builtin("bialgebra").homify("theta-min")
    assert hom_bi.is_homified() and hom_bi.is_normal()

    assert pyhomprop.char_poly(dual, "[[1, 0], [0, 2]]") == ["2", "-3", "1"]

    print("pyhomprop smoke test passed")


if __name__ == "__main__":
    main()
