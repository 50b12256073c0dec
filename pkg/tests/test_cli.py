import io
import json

import numpy as np
import pytest

from trimirror import (
    Plane,
    Rotation,
    Tolerance,
    classify,
    iso_equal,
    plane_reflection,
    reconstruct,
    rotation_about_axis,
    translation,
)
from trimirror.cli import (
    SpecError,
    main,
    motion_class_from_json,
    motion_from_spec,
    parse_angle,
)
from trimirror.motion import apply

import oracle

P_EX = np.array([0.7134339075145071, 0.7134339075145069, 1.5124720131911649])

H_SPEC = {
    "kind": "sequence",
    "steps": [
        {"kind": "rotation", "point": [0, 0, 0], "dir": [0, 0, -1], "angle": "pi/4"},
        {"kind": "translation", "v": [0, 0, 1]},
        {"kind": "rotation", "point": [1, 0, 0], "dir": [1, -1, 0], "angle": "pi/6"},
        {"kind": "translation", "v": [1, 1, 1]},
    ],
}

G_SPEC = {
    "kind": "sequence",
    "steps": [
        {"kind": "rotation", "point": [0, 0, 0], "dir": [0, 0, -1], "angle": "pi/4"},
        {"kind": "translation", "v": [0, 0, 1]},
    ],
}


def _write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def _run_json(capsys, argv):
    code, out = _run(capsys, argv)
    assert code == 0
    return json.loads(out)


def test_parse_angle_tokens():
    assert parse_angle("pi") == pytest.approx(np.pi)
    assert parse_angle("-pi") == pytest.approx(-np.pi)
    assert parse_angle("pi/6") == pytest.approx(np.pi / 6)
    assert parse_angle(" pi/4 ") == pytest.approx(np.pi / 4)
    assert parse_angle(1.25) == 1.25
    assert parse_angle(-3) == -3.0
    for bad in ("2pi", "pi/0", "tau", "", None, True, float("nan")):
        with pytest.raises(SpecError):
            parse_angle(bad)


def test_motion_from_spec_kinds():
    rot = motion_from_spec(
        {"kind": "rotation", "point": [0, 0, 0], "dir": [0, 0, 1], "angle": "pi/2"}
    )
    assert np.allclose(apply(rot, (1, 0, 0)), (0, 1, 0), atol=1e-15)

    tr = motion_from_spec({"kind": "translation", "v": [1, 2, 3]})
    assert np.allclose(tr.translation, (1, 2, 3))

    refl = motion_from_spec({"kind": "reflection", "normal": [0, 0, 1], "offset": 1.0})
    assert iso_equal(refl, plane_reflection(Plane((0, 0, 1), 1.0)))

    inv = motion_from_spec({"kind": "inversion", "center": [1, 1, 1]})
    assert np.allclose(apply(inv, (0, 0, 0)), (2, 2, 2), atol=1e-15)

    seq = motion_from_spec(
        {
            "kind": "sequence",
            "steps": [
                {"kind": "translation", "v": [1, 0, 0]},
                {"kind": "rotation", "point": [0, 0, 0], "dir": [0, 0, 1], "angle": "pi/2"},
            ],
        }
    )
    # the translation acts first
    assert np.allclose(apply(seq, (0, 0, 0)), (0, 1, 0), atol=1e-15)


def test_motion_from_spec_rejects_malformed():
    bad_docs = [
        "not a dict",
        {"kind": "spiral"},
        {"kind": "rotation", "point": [0, 0, 0], "dir": [0, 0, 0], "angle": 1.0},
        {"kind": "rotation", "point": [0, 0], "dir": [0, 0, 1], "angle": 1.0},
        {"kind": "translation"},
        {"kind": "reflection", "normal": [0, 0, 1], "offset": "one"},
        {"kind": "sequence", "steps": []},
        {"kind": "sequence", "steps": "nope"},
    ]
    for doc in bad_docs:
        with pytest.raises(SpecError):
            motion_from_spec(doc)


def test_classify_command(tmp_path, capsys):
    path = _write(
        tmp_path,
        "rot.json",
        {"kind": "rotation", "point": [0, 0, 0], "dir": [0, 0, 1], "angle": "pi/2"},
    )
    doc = _run_json(capsys, ["classify", "--input", path])
    assert doc["class"] == "rotation"
    assert doc["angle"] == pytest.approx(np.pi / 2, abs=1e-12)
    assert np.allclose(doc["axis"]["dir"], (0, 0, 1))
    assert np.allclose(doc["axis"]["point"], (0, 0, 0))


def test_classify_reads_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps({"kind": "translation", "v": [1, 0, 0]})))
    doc = _run_json(capsys, ["classify"])
    assert doc == {"class": "translation", "v": [1.0, 0.0, 0.0]}


def test_compose_composite_sequence(tmp_path, capsys):
    path = _write(tmp_path, "h.json", H_SPEC)
    doc = _run_json(capsys, ["compose", "--input", path])
    assert len(doc["linear"]) == 9
    from trimirror.example import make_h

    h = make_h()
    assert np.allclose(doc["linear"], np.asarray(h.linear).reshape(9), atol=1e-12)
    assert np.allclose(doc["translation"], P_EX, atol=1e-12)
    assert np.allclose(doc["translation"], (0.713432, 0.713434, 1.512472), atol=5e-6)


def test_compose_inversion(tmp_path, capsys):
    path = _write(tmp_path, "inv.json", {"kind": "inversion", "center": [1, 2, 3]})
    doc = _run_json(capsys, ["compose", "--input", path])
    assert np.allclose(doc["linear"], -np.eye(3).reshape(9))
    assert np.allclose(doc["translation"], (2, 4, 6))


def test_classify_composite_matches_library(tmp_path, capsys):
    path = _write(tmp_path, "h.json", H_SPEC)
    doc = _run_json(capsys, ["classify", "--input", path])
    from trimirror.example import make_h

    record = classify(make_h())
    assert doc["class"] == "screw"
    assert doc["angle"] == pytest.approx(record.angle, abs=1e-15)
    assert np.allclose(doc["slide"], record.slide, atol=1e-15)
    assert np.allclose(doc["axis"]["point"], record.axis.point, atol=1e-15)


def test_triples_identity_case(tmp_path, capsys):
    triple = {"A": [1, 0, 0], "B": [0, 2, 0], "C": [0, 0, 3]}
    src = _write(tmp_path, "src.json", triple)
    dst = _write(tmp_path, "dst.json", triple)
    doc = _run_json(capsys, ["triples", "--src", src, "--dst", dst])
    assert doc["self_check"] is True
    assert len(doc["mirrors"]) == 3
    first = doc["mirrors"][0]
    for mirror in doc["mirrors"][1:]:
        assert np.allclose(mirror["normal"], first["normal"], atol=1e-12)
        assert mirror["offset"] == pytest.approx(first["offset"], abs=1e-12)
    assert doc["first_class"]["class"] == "reflection"
    assert doc["second_class"]["class"] == "identity"
    assert np.allclose(doc["fourth_mirror"]["normal"], first["normal"], atol=1e-12)


def test_triples_swap_case(tmp_path, capsys):
    src = _write(tmp_path, "src.json", {"A": [0, 0, 0], "B": [2, 0, 0], "C": [1, 1, 0]})
    dst = _write(tmp_path, "dst.json", {"A": [2, 0, 0], "B": [0, 0, 0], "C": [1, 1, 0]})
    doc = _run_json(capsys, ["triples", "--src", src, "--dst", dst])
    assert doc["self_check"] is True
    assert np.allclose(doc["mirrors"][0]["normal"], (1, 0, 0))
    assert doc["mirrors"][0]["offset"] == pytest.approx(1.0, abs=1e-12)
    for mirror in doc["mirrors"][1:]:
        assert np.allclose(mirror["normal"], (0, 0, 1))
        assert mirror["offset"] == pytest.approx(0.0, abs=1e-12)
    assert doc["first_class"]["class"] == "reflection"
    # the proper partner is the half-turn about the y-line through (1, 0, 0)
    assert doc["second_class"]["class"] == "rotation"
    assert abs(doc["second_class"]["angle"]) == pytest.approx(np.pi, abs=1e-12)
    assert np.allclose(doc["second_class"]["axis"]["dir"], (0, 1, 0), atol=1e-12)
    assert np.allclose(doc["second_class"]["axis"]["point"], (1, 0, 0), atol=1e-12)


def test_iterate_csv_unit_pitch_screw(tmp_path, capsys):
    path = _write(tmp_path, "g.json", G_SPEC)
    code, out = _run(capsys, ["iterate", "--input", path, "--start", "1,0,0", "--count", "8"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "i,x,y,z"
    assert len(lines) == 10
    assert lines[1] == "0,1.0,0.0,0.0"
    for i, line in enumerate(lines[1:]):
        fields = line.split(",")
        assert fields[0] == str(i)
        assert fields[3] == repr(float(i))
        x, y = float(fields[1]), float(fields[2])
        assert np.hypot(x, y) == pytest.approx(1.0, abs=1e-12)


def test_iterate_zero_count_and_json(tmp_path, capsys):
    path = _write(tmp_path, "g.json", G_SPEC)
    code, out = _run(capsys, ["iterate", "--input", path, "--start", "1,0,0", "--count", "0"])
    assert code == 0
    assert out == "i,x,y,z\n0,1.0,0.0,0.0\n"
    doc = _run_json(
        capsys, ["iterate", "--input", path, "--start", "1,0,0", "--count", "3", "--format", "json"]
    )
    assert len(doc["points"]) == 4
    assert np.allclose(doc["points"][0], (1, 0, 0))
    assert doc["points"][3][2] == pytest.approx(3.0, abs=1e-12)


def test_iterate_default_count(tmp_path, capsys):
    path = _write(tmp_path, "g.json", G_SPEC)
    code, out = _run(capsys, ["iterate", "--input", path, "--start", "1,0,0"])
    assert code == 0
    assert len(out.splitlines()) == 14  # header + 13 points


def test_example_command(capsys):
    doc = _run_json(capsys, ["example"])
    assert doc["theta"] == pytest.approx(0.936324, abs=5e-6)
    assert np.allclose(doc["m"], (-0.539178, 0.223335, 0.833496), atol=5e-6)
    assert np.allclose(doc["residual"], (1.25261, 0.490099, 0.678976), atol=5e-6)
    assert np.allclose(doc["p"], P_EX, atol=1e-12)
    assert np.allclose(doc["bisector_normal_ab"], (1.29261, -0.611424, 1), atol=5e-6)
    assert np.allclose(doc["bisector_normal_bb_prime"], (0.332024, -2.93047, 1), atol=5e-6)
    assert doc["residual_dot_n"] <= 1e-9
    assert len(doc["axis_k"]["dir"]) == 3 and len(doc["screw_axis_h"]["point"]) == 3


def test_exit_codes(tmp_path, capsys):
    garbled = tmp_path / "bad.json"
    garbled.write_text("{not json", encoding="utf-8")
    assert main(["classify", "--input", str(garbled)]) == 2
    capsys.readouterr()

    assert main(["classify", "--input", str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()

    g = _write(tmp_path, "g.json", G_SPEC)
    assert main(["iterate", "--input", g, "--start", "1,0"]) == 2
    capsys.readouterr()
    assert main(["iterate", "--input", g, "--start", "1,0,0", "--count", "-2"]) == 2
    capsys.readouterr()

    src = _write(tmp_path, "src.json", {"A": [0, 0, 0], "B": [1, 0, 0], "C": [0, 1, 0]})
    stretched = _write(tmp_path, "dst.json", {"A": [0, 0, 0], "B": [3, 0, 0], "C": [0, 1, 0]})
    assert main(["triples", "--src", src, "--dst", stretched]) == 3
    capsys.readouterr()

    flat = _write(tmp_path, "flat.json", {"A": [0, 0, 0], "B": [1, 0, 0], "C": [2, 0, 0]})
    assert main(["triples", "--src", flat, "--dst", src]) == 2
    capsys.readouterr()

    assert main([]) == 2
    capsys.readouterr()


def test_tolerance_flag_loosens_length_checks(tmp_path, capsys):
    path = _write(tmp_path, "tiny.json", {"kind": "translation", "v": [1e-5, 0, 0]})
    strict = _run_json(capsys, ["classify", "--input", path])
    assert strict["class"] == "translation"
    loose = _run_json(capsys, ["--tol", "1e-3", "classify", "--input", path])
    assert loose["class"] == "identity"


def test_emitted_class_round_trips(tmp_path, capsys):
    rng = np.random.default_rng(51)
    for _ in range(20):
        motion = oracle.random_motion(rng)
        record = classify(motion)
        from trimirror.cli import class_to_json

        doc = json.loads(json.dumps(class_to_json(record)))
        again = motion_class_from_json(doc)
        assert iso_equal(reconstruct(again), motion, Tolerance(1e-8, 1e-8))


def test_outputs_are_deterministic(tmp_path, capsys):
    runs = []
    for _ in range(2):
        code, out = _run(capsys, ["example"])
        assert code == 0
        runs.append(out)
    assert runs[0] == runs[1]

    src = _write(tmp_path, "src.json", {"A": [0, 0, 0], "B": [2, 0, 0], "C": [1, 1, 0]})
    dst = _write(tmp_path, "dst.json", {"A": [2, 0, 0], "B": [0, 0, 0], "C": [1, 1, 0]})
    runs = [_run(capsys, ["triples", "--src", src, "--dst", dst])[1] for _ in range(2)]
    assert runs[0] == runs[1]

    g = _write(tmp_path, "g.json", G_SPEC)
    argv = ["iterate", "--input", g, "--start", "1,0,0", "--count", "8"]
    runs = [_run(capsys, argv)[1] for _ in range(2)]
    assert runs[0] == runs[1]
