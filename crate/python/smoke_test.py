"""Smoke test for the ratholo_py extension module.

Build and install first:  pip install --no-build-isolation ./crates/python
"""

import json

import ratholo_py as rh


def main():
    assert rh.elliptic_types(7) == [
        "S7", "S4xS3", "S2xS5", "CP2xS3", "S2xS2xS3", "S3xCP2#CP2", "S3twisted",
    ]
    assert len(rh.elliptic_types(4)) == 4

    cp2 = json.dumps({
        "generators": [{"name": "u", "degree": 2}, {"name": "x", "degree": 5}],
        "differential": {"x": "u^3"},
    })
    assert rh.cohomology_dims(cp2, 6) == [1, 0, 1, 0, 1, 0, 0]
    assert rh.classify_model(cp2) == "CP2"

    assert not rh.iso_case31("2", "3", "Q")
    assert rh.iso_case31("2", "8")
    assert rh.iso_case31("2", "3", "R")

    spec = json.dumps({"g": [{"family": "SU", "n": 3}], "h": [{"kind": "circle", "left": [[1, 2, -3]]}]})
    assert rh.biquotient_type(spec) == "S2xS5"

    assert int(rh.formality_bound("pqk", 16, 6)) == 5005
    assert int(rh.formality_bound("pqk", 16, 4, "special_bp")) == 455
    assert rh.pqk16_triples() == [(1, 0, 1), (2, 1, 2), (3, 0, 4)]

    code, out, _ = rh.run_cli(["bounds", "--class", "kaehler", "--dim", "4", "--k", "1", "--estimate", "second"])
    assert code == 0 and out.strip() == "3"

    try:
        rh.elliptic_types(5)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
