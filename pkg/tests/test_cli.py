import json
import subprocess
import sys

import pytest

from geopack import InstanceFile, gen_instance
from geopack.cli import main


def run_cli(args):
    return subprocess.run([sys.executable, "-m", "geopack.cli", *args],
                          capture_output=True, text=True)


@pytest.fixture(scope="module")
def inst_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "inst.json"
    rc = main(["gen", "--seed", "5", "--vertices", "10", "--points", "12",
               "--delta-quantile", "0.3", "-o", str(path)])
    assert rc == 0
    return path


def test_gen_output_schema(inst_path):
    data = json.loads(inst_path.read_text())
    assert set(data) >= {"polygon", "points", "delta"}
    assert all(len(p) == 2 for p in data["points"])
    assert len(data["polygon"]["vertices"]) >= 3


def test_cover_verify_roundtrip(inst_path, tmp_path):
    cert = tmp_path / "cert.json"
    assert main(["cover", "-i", str(inst_path), "-o", str(cert)]) == 0
    data = json.loads(cert.read_text())
    assert data["counts"]["cover"] <= 19 * data["counts"]["packing"]
    assert main(["verify", "-i", str(inst_path), "-c", str(cert)]) == 0


def test_verify_rejects_tampered_certificate(inst_path, tmp_path):
    cert = tmp_path / "cert.json"
    main(["cover", "-i", str(inst_path), "-o", str(cert)])
    data = json.loads(cert.read_text())
    data["cover"]["centers"] = data["cover"]["centers"][:1]
    cert.write_text(json.dumps(data))
    assert main(["verify", "-i", str(inst_path), "-c", str(cert)]) == 1


def test_oracle_command(inst_path, capsys):
    assert main(["oracle", "-i", str(inst_path)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["nu"] <= out["theta"] <= out["rho_hat"]


def test_plot_command(inst_path, tmp_path):
    cert = tmp_path / "cert.json"
    main(["cover", "-i", str(inst_path), "-o", str(cert)])
    svg = tmp_path / "out.svg"
    assert main(["plot", "-i", str(inst_path), "-c", str(cert), "-o", str(svg)]) == 0
    assert svg.read_text().startswith("<svg")


def test_invalid_input_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["cover", "-i", str(bad), "-o", str(tmp_path / "c.json")]) == 2
    missing = tmp_path / "missing.json"
    assert main(["cover", "-i", str(missing), "-o", str(tmp_path / "c.json")]) == 2


def test_too_large_exit_code(tmp_path):
    data = {
        "polygon": {"vertices": [[0, 0], [10, 0], [10, 10], [0, 10]]},
        "points": [[1 + 0.05 * i, 1.0] for i in range(45)],
        "delta": 0.4,
    }
    p = tmp_path / "big.json"
    p.write_text(json.dumps(data))
    assert main(["oracle", "-i", str(p)]) == 3


def test_determinism_byte_identical(tmp_path):
    outs = []
    for run in range(2):
        ip = tmp_path / f"i{run}.json"
        cp = tmp_path / f"c{run}.json"
        main(["gen", "--seed", "77", "--vertices", "12", "--points", "15",
              "--delta-quantile", "0.5", "-o", str(ip)])
        main(["cover", "-i", str(ip), "-o", str(cp)])
        outs.append((ip.read_bytes(), cp.read_bytes()))
    assert outs[0] == outs[1]


def test_cli_subprocess_entrypoint(inst_path):
    res = run_cli(["oracle", "-i", str(inst_path)])
    assert res.returncode == 0


def test_instance_roundtrip(tmp_path):
    inst = gen_instance(seed=12, n_vertices=9, n_points=7, delta_mode=0.1)
    p = tmp_path / "x.json"
    inst.save(p)
    again = InstanceFile.load(p)
    assert again.points == inst.points
    assert again.delta == inst.delta
    assert again.polygon.vertices == inst.polygon.vertices
