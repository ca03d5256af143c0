import json

from nfs.cli import main


def test_factor_decimal_and_hex(capsys):
    assert main(["factor", "--n", "91"]) == 0
    assert capsys.readouterr().out.split() == ["7", "13"]
    assert main(["factor", "--n", "0x5B", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["factors"] == [7, 13]


def test_factor_rejects_prime(capsys):
    assert main(["factor", "--n", "7919"]) == 1
    assert "prime" in capsys.readouterr().err


def test_factor_failure_exit_code(capsys):
    # p = 10^9 + 7 is beyond trial division; a 3-wide box grown by 1.5 per
    # retry never collects enough relations
    code = main(["factor", "--n", "1000000016000000063", "--half-width", "3", "--rational-bound", "100", "--algebraic-bound", "100"])
    assert code == 2
    assert capsys.readouterr().err.startswith("failed")


def test_smoothlab_psi_csv(capsys):
    assert main(["smoothlab", "psi", "--x", "10,100", "--y", "2", "--csv"]) == 0
    assert capsys.readouterr().out == "x,y,mod,res,psi\n10,2,,,4\n100,2,,,7\n"
    assert main(["smoothlab", "psi", "--x", "10", "--y", "2", "--mod", "3", "--res", "0"]) == 0
    assert capsys.readouterr().out.strip().endswith("psi=0")


def test_smoothlab_rho_and_goodness(capsys):
    assert main(["smoothlab", "rho", "--x", "10", "--y", "10"]) == 0
    assert "rho=9/10" in capsys.readouterr().out
    assert main(["smoothlab", "goodness", "--r", "2,3", "--F", "100", "--B", "1", "--csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1].startswith("2,100,1,0.15,")
    assert "indeterminate" in lines[2]
