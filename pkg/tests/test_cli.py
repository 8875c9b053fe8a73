import os
import subprocess
import sys
from pathlib import Path

import pytest

from dualgroups import catalog
from dualgroups.cli import main
from dualgroups.cocycles import witt_cocycle
from dualgroups.fields import GF, QQ
from dualgroups.poly import IModule
from dualgroups.presentation_io import (
    ParseError,
    parse_presentation,
    print_presentation,
)

DATA = Path(__file__).resolve().parent.parent / "src" / "dualgroups" / "data"
I1 = IModule(1)


def run_cli(args, **kw):
    return subprocess.run(
        [sys.executable, "-m", "dualgroups.cli", *args],
        capture_output=True, text=True, **kw,
    )


# -- the file format -----------------------------------------------------------


def test_parse_print_roundtrip_on_catalog():
    for name in sorted(os.listdir(DATA)):
        text = (DATA / name).read_text()
        pf = parse_presentation(text)
        assert print_presentation(pf) == text, name


def test_print_parse_print_idempotent():
    G = catalog.ga_semidirect_gm(GF(5))
    text = print_presentation(G)
    pf = parse_presentation(text)
    assert print_presentation(pf) == text


def test_cocycle_section_roundtrip():
    G = catalog.additive_group(GF(3))
    text = print_presentation(G, I1, cocycle=witt_cocycle(G, I1))
    pf = parse_presentation(text)
    assert not pf.is_dual
    assert pf.cocycle_values is not None
    assert print_presentation(pf) == text


def test_unknown_section_rejected():
    bad = "BASE\n  field Q\nGENERATORS\n  x\nWHATEVER\n  1\n"
    with pytest.raises(ParseError):
        parse_presentation(bad)


def test_missing_section_rejected():
    bad = "BASE\n  field Q\nGENERATORS\n  x\n"
    with pytest.raises(ParseError):
        parse_presentation(bad)


# -- exit codes and determinism --------------------------------------------------


def test_verify_catalog_files_pass():
    for name in sorted(os.listdir(DATA)):
        r = run_cli(["verify", str(DATA / name)])
        assert r.returncode == 0, (name, r.stdout, r.stderr)


def test_verify_corrupted_antipode_exits_2(tmp_path):
    text = (DATA / "ga_q.grp").read_text().replace("ANTIPODE\n  x = -x", "ANTIPODE\n  x = x")
    bad = tmp_path / "bad.grp"
    bad.write_text(text)
    r = run_cli(["verify", str(bad)])
    assert r.returncode == 2


def test_parse_error_exits_3(tmp_path):
    bad = tmp_path / "bad.grp"
    bad.write_text("BASE\n  field Q\nGENERATORS\n  x\nNONSECTION\n")
    r = run_cli(["verify", str(bad)])
    assert r.returncode == 3


def test_reports_are_byte_identical():
    f = str(DATA / "ga_witt_f3.grp")
    a = run_cli(["pipeline", f, "deform", "weil-restrict", "extract-cocycle"])
    b = run_cli(["pipeline", f, "deform", "weil-restrict", "extract-cocycle"])
    assert a.returncode == 0
    assert a.stdout == b.stdout
    assert a.stdout.encode() == b.stdout.encode()


def test_pipeline_round_trip_returns_cocycle():
    f = str(DATA / "ga_witt_f5.grp")
    r = run_cli(["pipeline", f, "deform", "weil-restrict", "extract-cocycle"])
    assert r.returncode == 0
    assert "x = e1*(x(1)^4*x(2) + 2*x(1)^3*x(2)^2 + 2*x(1)^2*x(2)^3 + x(1)*x(2)^4)" in r.stdout


def test_pipeline_weil_restrict_on_mu_n(tmp_path):
    # build a trivial deformation of mu_3 and restrict it
    from dualgroups.extensions import trivial_deformation

    dm = trivial_deformation(catalog.roots_of_unity(QQ, 3), I1)
    f = tmp_path / "mu3_dual.grp"
    f.write_text(print_presentation(dm.hopf, dm.iota, rigidification=dm.rigidification))
    r = run_cli(["pipeline", str(f), "weil-restrict"])
    assert r.returncode == 0
    assert "x_0^3 - 1" in r.stdout
    assert "3*x_0^2*x_1" in r.stdout


def test_pipeline_type_mismatch_exits_3():
    f = str(DATA / "ga_q.grp")
    r = run_cli(["pipeline", f, "weil-restrict"])
    assert r.returncode == 3
    assert "weil-restrict" in r.stderr


def test_nonrigid_refused_with_exit_2():
    f = str(DATA / "nonrigid_f3.grp")
    r = run_cli(["pipeline", f, "extract-cocycle"])
    assert r.returncode == 2


def test_classify_split_and_nonsplit(tmp_path):
    r = run_cli(["classify", str(DATA / "ga_witt_f3.grp")])
    assert r.returncode == 0
    assert "split: false" in r.stdout
    # the trivial deformation splits
    from dualgroups.extensions import trivial_deformation

    dm = trivial_deformation(catalog.additive_group(GF(3)), I1)
    f = tmp_path / "ga_triv.grp"
    f.write_text(print_presentation(dm.hopf, dm.iota, rigidification=dm.rigidification))
    r = run_cli(["classify", str(f)])
    assert r.returncode == 0
    assert "split: true" in r.stdout


def test_classify_bounds_exit_4(tmp_path):
    # bilinear cocycle in odd characteristic: windowed model insufficient
    from dualgroups.cocycles import bilinear_cocycle

    G = catalog.additive_group(GF(5))
    c = bilinear_cocycle(G, I1, [("x", 0, 0, 0, 1)])
    f = tmp_path / "xy.grp"
    f.write_text(print_presentation(G, I1, cocycle=c))
    r = run_cli(["--fdeg", "2", "classify", str(f)])
    assert r.returncode == 4


def test_baer_sum_and_scale(tmp_path):
    f = str(DATA / "ga_witt_f2.grp")
    r = run_cli(["pipeline", f, "deform", "weil-restrict", "baer-sum",
                 "extract-cocycle", "--with", f])
    assert r.returncode == 0
    # over F_2 the doubled Witt class is zero
    assert "x = 0" in r.stdout
    r2 = run_cli(["scale", "2", f])
    assert r2.returncode == 0


def test_witt_and_dmod_commands():
    r = run_cli(["witt", "add", "1,0", "1,0", "--p", "2"])
    assert r.returncode == 0 and "result: 0, 1" in r.stdout
    r = run_cli(["witt", "ghost", "1,2", "--p", "3"])
    assert r.returncode == 0 and "ghost: 1, 7" in r.stdout
    r = run_cli(["--prec", "2", "dmod", "nf", "3 + F*V*F", "--p", "3"])
    assert r.returncode == 0 and "3 + 3*F" in r.stdout
    r = run_cli(["dmod", "lie", "2", "--p", "5"])
    assert r.returncode == 0 and "rank 10" in r.stdout


def test_out_flag_writes_file(tmp_path):
    out = tmp_path / "report.txt"
    r = run_cli(["--out", str(out), "verify", str(DATA / "ga_q.grp")])
    assert r.returncode == 0
    assert out.read_text().startswith("# dualgroups report")


def test_main_in_process():
    # the entry point is importable and runnable without a subprocess
    assert main(["verify", str(DATA / "gm_q.grp")]) == 0
