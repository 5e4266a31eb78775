import functools
import http.server
import json
import shutil
import subprocess
import sys
import threading
from pathlib import Path

import pytest

from wzkit import catalog
from wzkit.cli import EXIT_NETWORK, EXIT_NOT_FOUND, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- prove -------------------------------------------------------------------------

def test_prove_sum(capsys, tmp_path):
    out_file = tmp_path / "a.json"
    code, out, err = run(capsys, "prove", "sum", "3^j*binomial(3*n-j,2*n)", "--range", "0..n",
                         "--out", str(out_file))
    assert code == EXIT_OK
    art = json.loads(out)
    assert art == json.loads(out_file.read_text())
    assert art["schema"] == "wzkit-proof/1" and art["kind"] == "sum"
    assert art["operator"]["canonical"] == "(4)*N^1 + (-27)*N^0"
    assert art["verification"]["certificate"] is True
    assert art["verification"]["oracle"] is True
    assert "certificate check: True" in err


def test_prove_integral_paper_style(capsys):
    code, out, _ = run(capsys, "prove", "int", "(3*x^2-2*x^3)^n", "--bounds", "-1/2..3/2", "--style", "paper")
    assert code == EXIT_OK
    assert out.strip() == catalog.INTEGRAL_PAPER_OUTPUT


def test_prove_a006256(capsys):
    code, out, _ = run(capsys, "prove", "sum", catalog.A006256_SUM.text, "--range", "0..n", "--style", "canonical")
    assert code == EXIT_OK
    assert out.strip() == "[(16*n^2+56*n+48)*N^2 + (-216*n^2-594*n-420)*N^1 + (729*n^2+1458*n+648)*N^0, 0]"


def test_prove_is_deterministic(capsys):
    argv = ("prove", "sum", "(-4)**j*binomial(3*n+1,n+j+1)", "--range", "0..2n")
    arts = []
    for _ in range(2):
        code, out, _ = run(capsys, *argv)
        assert code == EXIT_OK
        art = json.loads(out)
        del art["timing"]
        arts.append(json.dumps(art, sort_keys=True))
    assert arts[0] == arts[1]


def test_prove_not_found(capsys):
    code, _, err = run(capsys, "prove", "sum", catalog.A006256_SUM.text, "--range", "0..n", "--max-order", "1")
    assert code == EXIT_NOT_FOUND
    assert "no-operator-found" in err


def test_prove_unsupported_range(capsys):
    code, _, err = run(capsys, "prove", "sum", "binomial(n,k)", "--range", "0..n-1", "--start", "1")
    assert code == EXIT_NOT_FOUND
    assert "unsupported-range" in err


@pytest.mark.parametrize("argv", [
    ("prove", "sum", "3^j*binomial(3*n-j,2*n"),
    ("prove", "sum", "3^j*binomial(3*n-j,2*n", "--range", "0..n"),
    ("prove", "sum", "binomial(n^2,k)", "--range", "0..n"),
    ("prove", "int", "binomial(n,k)", "--bounds", "0..1"),
    ("prove", "sum", "x^n", "--range", "0..n"),
    ("prove", "int", "x^n", "--bounds", "0..y"),
    ("prove", "sum", "binomial(n,k)", "--range", "0..n", "--max-order", "-1"),
    ("prove", "cube", "x"),
    ("check",),
    ("oeis", "--id", "A000045"),
    (),
])
def test_usage_errors(capsys, argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    capsys.readouterr()
    assert code == EXIT_USAGE


def test_syntax_error_reports_position(capsys):
    code, _, err = run(capsys, "prove", "sum", "3^j*binomial(3*n-j,2*n", "--range", "0..n")
    assert code == EXIT_USAGE
    assert "position 22" in err


# -- check -------------------------------------------------------------------------

@pytest.fixture(scope="module")
def artifacts(tmp_path_factory):
    d = tmp_path_factory.mktemp("art")
    paths = {}
    for name, argv in {
        "sum": ("prove", "sum", "2^j*binomial(3*n+1,n-j)", "--range", "0..n"),
        "a6256": ("prove", "sum", catalog.A006256_SUM.text, "--range", "0..n"),
        "int": ("prove", "int", "(3*x^2-2*x^3)^n", "--bounds", "-1/2..3/2"),
        "rat": ("prove", "int", "x^n/(1+x)", "--bounds", "0..1"),
    }.items():
        p = d / f"{name}.json"
        assert main(list(argv) + ["--out", str(p)]) == EXIT_OK
        paths[name] = p
    return paths


@pytest.mark.parametrize("name", ["sum", "a6256", "int", "rat"])
def test_check_untampered(capsys, artifacts, name):
    code, out, _ = run(capsys, "check", str(artifacts[name]))
    assert code == EXIT_OK, out
    assert out.startswith("PASS")


def _tamper(src, dst, edit):
    art = json.loads(src.read_text())
    edit(art)
    dst.write_text(json.dumps(art))
    return dst


def _bump_certificate(art):
    coeff = next(c for c in art["certificate"]["num"] if c)
    coeff[0] = f"{int(coeff[0].split('/')[0]) + 1}/1"


def _bump_operator(art):
    cs = art["operator"]["coefficients"]
    cs[0][0] = f"{int(cs[0][0].split('/')[0]) + 1}/1"


def _bump_rhs(art):
    art["rhs"] = [{"start": 0, "value": "1/1", "quotient": {"num": ["1/1"], "den": ["1/1"]}, "prefix": []}]


@pytest.mark.parametrize("name", ["sum", "a6256", "int"])
@pytest.mark.parametrize("edit", [_bump_certificate, _bump_operator, _bump_rhs])
def test_check_detects_tampering(capsys, tmp_path, artifacts, name, edit):
    bad = _tamper(artifacts[name], tmp_path / "bad.json", edit)
    code, out, _ = run(capsys, "check", str(bad))
    assert code == EXIT_VERIFY
    assert "FAIL" in out


def test_check_rejects_garbage(capsys, tmp_path):
    p = tmp_path / "g.json"
    p.write_text("{not json")
    assert run(capsys, "check", str(p))[0] == EXIT_VERIFY
    p.write_text(json.dumps({"schema": "other"}))
    assert run(capsys, "check", str(p))[0] == EXIT_VERIFY
    assert run(capsys, "check", str(tmp_path / "missing.json"))[0] == EXIT_USAGE


def test_paper_suite(capsys):
    code, out, _ = run(capsys, "check", "--paper-suite")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert len(lines) == 10 and all(line.startswith("PASS") for line in lines)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wzkit", "prove", "int", "2*(3*x^2-2*x^3)^n",
                           "--bounds", "0..1", "--style", "paper"], capture_output=True, text=True, timeout=120)
    assert proc.returncode == EXIT_OK
    assert proc.stdout.strip() == catalog.INTEGRAL_PAPER_OUTPUT


# -- oeis --------------------------------------------------------------------------

@pytest.fixture
def bfile_server(tmp_path):
    root = tmp_path / "www"
    (root / "A006256").mkdir(parents=True)
    shutil.copy(DATA / "b006256.txt", root / "A006256" / "b006256.txt")
    handler = functools.partial(http.server.SimpleHTTPRequestHandler, directory=str(root))
    server = http.server.ThreadingHTTPServer(("127.0.0.1", 0), handler)
    server.RequestHandlerClass.log_message = lambda *a, **k: None
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_address[1]}"
    server.shutdown()
    server.server_close()


def test_oeis_fetch_then_offline(capsys, tmp_path, bfile_server):
    cache = tmp_path / "cache"
    code, out, _ = run(capsys, "oeis", "--id", "A006256", "--limit", "40", "--cache", str(cache),
                       "--base-url", bfile_server)
    assert code == EXIT_OK, out
    assert (cache / "b006256.txt").read_text() == (DATA / "b006256.txt").read_text()
    code, out, _ = run(capsys, "oeis", "--id", "6256", "--offline", "--cache", str(cache))
    assert code == EXIT_OK
    assert "0..40" in out


def test_oeis_corrupted_cache(capsys, tmp_path):
    cache = tmp_path / "cache"
    cache.mkdir()
    text = (DATA / "b006256.txt").read_text().replace("\n3 258\n", "\n3 259\n")
    (cache / "b006256.txt").write_text(text)
    code, out, _ = run(capsys, "oeis", "--id", "A006256", "--cache", str(cache), "--offline")
    assert code == EXIT_VERIFY
    assert "a(3)" in out


def test_oeis_short_bfile_is_a_mismatch(capsys, tmp_path):
    cache = tmp_path / "cache"
    cache.mkdir()
    (cache / "b006256.txt").write_text("0 1\n1 6\n")
    assert run(capsys, "oeis", "--limit", "5", "--cache", str(cache), "--offline")[0] == EXIT_VERIFY


def test_oeis_offline_without_cache(capsys, tmp_path):
    code, _, err = run(capsys, "oeis", "--offline", "--cache", str(tmp_path / "empty"))
    assert code == EXIT_NETWORK
    assert "offline" in err


def test_oeis_network_failure(capsys, tmp_path):
    # nothing listens on this port once the probe socket is closed
    import socket
    s = socket.socket()
    s.bind(("127.0.0.1", 0))
    port = s.getsockname()[1]
    s.close()
    code, _, _ = run(capsys, "oeis", "--cache", str(tmp_path / "c"), "--base-url", f"http://127.0.0.1:{port}")
    assert code == EXIT_NETWORK


def test_oeis_cache_env(capsys, tmp_path, monkeypatch, bfile_server):
    monkeypatch.setenv("TELESCOPE_CACHE", str(tmp_path / "envcache"))
    assert run(capsys, "oeis", "--limit", "10", "--base-url", bfile_server)[0] == EXIT_OK
    assert (tmp_path / "envcache" / "b006256.txt").exists()
    assert run(capsys, "oeis", "--limit", "10", "--offline")[0] == EXIT_OK
