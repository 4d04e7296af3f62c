import json

import numpy as np
import pytest

from poincare_chsh import chsh, serialization, states
from poincare_chsh.cli import ScanConfig, main, parse_amplitudes
from poincare_chsh.correlations import correlation_matrix
from poincare_chsh.errors import ParseError

R2 = np.sqrt(2)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestScanConfig:
    def test_round_trip(self):
        cfg = ScanConfig.from_dict({"state": "chi", "circle_a": "rotz:pi/3", "fixed_a": [0.0, 1.0],
                                    "row": 2, "pairs": 100, "seed": 5, "noise": 0.1})
        again = ScanConfig.from_dict(json.loads(json.dumps(cfg.to_dict())))
        assert again == cfg

    def test_amplitudes_round_trip(self):
        cfg = ScanConfig.from_dict({"amplitudes": parse_amplitudes("0.6,0,0,0.8j")})
        again = ScanConfig.from_dict(json.loads(json.dumps(cfg.to_dict())))
        assert again == cfg
        np.testing.assert_allclose(again.rho().matrix[3, 0], 0.48j)

    @pytest.mark.parametrize("bad", [
        {"state": "phi-"}, {"circle_a": "xy"}, {"row": 7}, {"pairs": 0},
        {"panel": "yy"}, {"fixed_a": [0.0]}, {"colour": "red"}, {"noise": 2.0},
    ])
    def test_rejects(self, bad):
        with pytest.raises(ParseError):
            ScanConfig.from_dict(bad)

    def test_parse_amplitudes(self):
        assert parse_amplitudes("1,0,0,0") == [[1, 0], [0, 0], [0, 0], [0, 0]]
        with pytest.raises(ParseError):
            parse_amplitudes("1,0,0")
        with pytest.raises(ParseError):
            parse_amplitudes("a,b,c,d")


class TestExitCodes:
    def test_bad_state(self, capsys):
        assert run(capsys, "state", "phi-")[0] == 2

    def test_unknown_subcommand(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_missing_config_file(self, capsys, tmp_path):
        assert run(capsys, "state", "--config", str(tmp_path / "nope.json"))[0] == 3

    def test_bad_config_json(self, capsys, tmp_path):
        p = tmp_path / "c.json"
        p.write_text("{not json")
        assert run(capsys, "state", "--config", str(p))[0] == 2

    def test_unwritable_output(self, capsys, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("")
        target = blocker / "x.csv"
        assert run(capsys, "landscape", "--resolution", "5", "--csv", str(target))[0] == 3

    def test_path_without_row_or_offset(self, capsys):
        assert run(capsys, "path")[0] == 2

    def test_simulate_needs_pairs(self, capsys):
        assert run(capsys, "simulate", "--row", "1")[0] == 2


class TestState:
    def test_phi_plus(self, capsys):
        code, out, _ = run(capsys, "state", "phi+")
        assert code == 0
        last = out.strip().splitlines()[-1]
        assert last.startswith("S_max = ") and "(2 sqrt 2)" in last
        assert float(last.split()[2]) == pytest.approx(2 * R2, abs=1e-9)

    def test_phi_delta_zero_same_t(self, capsys):
        _, a, _ = run(capsys, "state", "phi+")
        _, b, _ = run(capsys, "state", "phi:delta=0")
        block = lambda s: s[s.index("correlation matrix T"):]
        assert block(a) == block(b)
        np.testing.assert_allclose(correlation_matrix(states.make_named_state("phi:delta=0")),
                                   correlation_matrix(states.make_named_state("phi+")), atol=1e-15)

    def test_product_amplitudes(self, capsys):
        code, out, _ = run(capsys, "state", "--amplitudes", "1,0,0,0")
        assert code == 0
        assert float(out.strip().splitlines()[-1].split()[2]) == pytest.approx(2, abs=1e-9)

    def test_config_and_flag_precedence(self, capsys, tmp_path):
        p = tmp_path / "c.json"
        p.write_text(json.dumps({"state": "phi'+", "noise": 0.5}))
        _, out, _ = run(capsys, "state", "--config", str(p), "--noise", "0")
        assert float(out.strip().splitlines()[-1].split()[2]) == pytest.approx(2 * R2)
        _, out, _ = run(capsys, "state", "--config", str(p))
        assert float(out.strip().splitlines()[-1].split()[2]) == pytest.approx(R2)

    def test_json_output(self, capsys, tmp_path):
        p = tmp_path / "s.json"
        assert run(capsys, "state", "chi", "--json", str(p))[0] == 0
        psi = states.state_from_dict(json.loads(p.read_text()))
        assert states.fidelity(psi, states.make_named_state("chi")) == pytest.approx(1)


class TestLandscape:
    def test_phi_plus_on_grid_peak(self, capsys, tmp_path):
        csv = tmp_path / "l.csv"
        code, out, _ = run(capsys, "landscape", "--state", "phi+", "--resolution", "161", "--csv", str(csv))
        assert code == 0
        rows, cols, s = serialization.grid_from_csv(csv.read_text())
        i, j = np.unravel_index(np.argmax(np.abs(s)), s.shape)
        assert abs(s[i, j]) == pytest.approx(2 * R2, abs=1e-9)
        assert (rows[i], cols[j]) == pytest.approx((np.pi / 8, 3 * np.pi / 8), abs=1e-12)
        assert "(π/8, 3π/8)" in out or "(pi/8, 3pi/8)" in out

    def test_phi_plus_default_resolution(self, capsys, tmp_path):
        csv = tmp_path / "l.csv"
        assert run(capsys, "landscape", "--csv", str(csv))[0] == 0
        rows, cols, s = serialization.grid_from_csv(csv.read_text())
        assert s.shape == (181, 181)
        # pi/8 falls between grid points of a 181-point [0, pi] axis
        assert 2 * R2 - 1e-3 < np.abs(s).max() <= 2 * R2

    def test_phi_prime_plus_exactly_two(self, capsys, tmp_path):
        js = tmp_path / "l.json"
        assert run(capsys, "landscape", "--state", "phi'+", "--json", str(js))[0] == 0
        grid = serialization.landscape_from_json(js.read_text())
        assert np.abs(grid.s_values).max() == pytest.approx(2, abs=1e-9)

    def test_chi_hd_hr(self, capsys):
        code, out, _ = run(capsys, "landscape", "--state", "chi", "--circle-b", "hr", "--resolution", "161")
        assert code == 0
        assert "violation: yes" in out
        assert float(out.splitlines()[1].split()[3]) == pytest.approx(2 * R2, abs=1e-9)

    def test_round_trip_and_image(self, capsys, tmp_path):
        outs = {k: tmp_path / f"l.{k}" for k in ("csv", "json", "png")}
        argv = ["landscape", "--state", "chi", "--circle-a", "rotz:pi/5", "--circle-b", "rotx:1.1",
                "--fixed-a", "0.3", "pi/3", "--resolution", "23"]
        assert run(capsys, *argv, "--csv", str(outs["csv"]), "--json", str(outs["json"]),
                   "--image", str(outs["png"]))[0] == 0
        grid = chsh.landscape(states.density_matrix(states.make_named_state("chi")),
                              chsh.GreatCircle("rotz", np.pi / 5), chsh.GreatCircle("rotx", 1.1),
                              0.3, np.pi / 3, 23)
        rows, cols, s = serialization.grid_from_csv(outs["csv"].read_text())
        np.testing.assert_allclose(s, grid.s_values, atol=1e-12, rtol=0)
        np.testing.assert_allclose(rows, grid.axis1, atol=1e-12, rtol=0)
        back = serialization.landscape_from_json(outs["json"].read_text())
        np.testing.assert_allclose(back.s_values, grid.s_values, atol=1e-12, rtol=0)
        assert back.fixed_a == pytest.approx((0.3, np.pi / 3))
        first = outs["png"].read_bytes()
        assert first.startswith(b"\x89PNG")
        assert run(capsys, *argv, "--image", str(outs["png"]))[0] == 0
        assert outs["png"].read_bytes() == first


class TestPath:
    @pytest.mark.parametrize("row", [3, 5])
    def test_rows(self, capsys, tmp_path, row):
        out = tmp_path / "p.csv"
        assert run(capsys, "path", "--row", str(row), "--out", str(out))[0] == 0
        series = serialization.series_from_csv(out.read_text())
        t = series["t_b"]
        assert len(t) == 50
        np.testing.assert_allclose(series["s_analytic"], chsh.PATH_ROWS[row - 1].expected(t), atol=1e-10, rtol=0)
        if row == 3:
            np.testing.assert_allclose(series["s_analytic"], -2 * R2 * np.sin(t - np.pi / 4), atol=1e-10)
        if row == 5:
            np.testing.assert_allclose(series["s_analytic"], 2 * np.sin(t + np.pi / 2), atol=1e-10)
            assert np.abs(series["s_analytic"]).max() <= 2 + 1e-12

    def test_monte_carlo_columns(self, capsys):
        code, out, _ = run(capsys, "path", "--row", "3", "--pairs", "100000", "--seed", "7")
        assert code == 0
        series = serialization.series_from_csv(out)
        dev = np.abs(series["s_simulated"] - series["s_analytic"])
        assert np.mean(dev < 4 * series["s_err"]) >= 0.95

    def test_explicit_path(self, capsys):
        code, out, _ = run(capsys, "path", "--offset", "pi/4", "--step", "pi/16")
        assert code == 0
        series = serialization.series_from_csv(out)
        np.testing.assert_allclose(series["t_b_prime"], series["t_b"] + np.pi / 4)
        assert len(series["t_b"]) == 17

    def test_step_not_dividing(self, capsys):
        assert run(capsys, "path", "--offset", "0", "--step", "0.3")[0] == 2


class TestMaxSearch:
    @pytest.mark.parametrize("state,peaks", [
        ("phi+", {"hd-hd", "hr-hr", "dr-dr"}),
        ("phi'+", {"hd-hr", "hr-hd", "dr-dr"}),
        ("chi", {"hd-hr", "hr-dr", "dr-hd"}),
    ])
    def test_tables(self, capsys, tmp_path, state, peaks):
        js = tmp_path / "m.json"
        code, out, _ = run(capsys, "maxsearch", "--state", state, "--json", str(js))
        assert code == 0
        table = json.loads(js.read_text())["s_max"]
        assert len(table) == 9
        for key, value in table.items():
            assert value == pytest.approx(2 * R2 if key in peaks else 2, abs=1e-4), key


class TestCircleScan:
    def test_chi_zz(self, capsys, tmp_path):
        js = tmp_path / "c.json"
        assert run(capsys, "circlescan", "--state", "chi", "--resolution", "3", "--json", str(js))[0] == 0
        scan = serialization.scan_from_json(js.read_text())
        np.testing.assert_allclose(scan.angles_a, [0, np.pi / 2, np.pi])
        assert scan.s_max[0, 1] == pytest.approx(2 * R2, abs=1e-6)
        assert np.diag(scan.s_max) == pytest.approx([2, 2, 2], abs=1e-6)

    def test_phi_plus_zx(self, capsys, tmp_path):
        csv, png = tmp_path / "c.csv", tmp_path / "c.png"
        argv = ["circlescan", "--panel", "zx", "--resolution", "7", "--csv", str(csv), "--image", str(png)]
        assert run(capsys, *argv)[0] == 0
        _, _, s = serialization.grid_from_csv(csv.read_text())
        assert s.min() >= 2 - 1e-9 and s.max() <= 2 * R2 + 1e-9
        assert s[0, 0] == pytest.approx(2 * R2, abs=1e-6)
        first = png.read_bytes()
        assert run(capsys, *argv)[0] == 0
        assert png.read_bytes() == first

    def test_round_trip(self, capsys, tmp_path):
        csv, js = tmp_path / "c.csv", tmp_path / "c.json"
        assert run(capsys, "circlescan", "--state", "phi'+", "--panel", "xz", "--resolution", "4",
                   "--csv", str(csv), "--json", str(js))[0] == 0
        a, b, s = serialization.grid_from_csv(csv.read_text())
        scan = serialization.scan_from_json(js.read_text())
        np.testing.assert_allclose(s, scan.s_max, atol=1e-12, rtol=0)
        np.testing.assert_allclose(a, scan.angles_a, atol=1e-12, rtol=0)


class TestSimulate:
    def test_byte_identical(self, capsys, tmp_path):
        files = []
        for k in range(2):
            rec, ser = tmp_path / f"r{k}.csv", tmp_path / f"s{k}.csv"
            assert run(capsys, "simulate", "--row", "1", "--pairs", "100000", "--seed", "3",
                       "--samples", "20", "--out", str(rec), "--series", str(ser))[0] == 0
            files.append((rec.read_bytes(), ser.read_bytes()))
        assert files[0] == files[1]
        rows = serialization.records_from_csv(files[0][0].decode())
        assert len(rows) == 80
        assert all(sum(r.counts()) == 100000 for r in rows)

    def test_row_6_statistical_maximum(self, capsys):
        code, out, _ = run(capsys, "simulate", "--row", "6", "--pairs", "10000", "--seed", "0")
        assert code == 0
        series = serialization.series_from_csv(out)
        k = int(np.argmax(np.abs(series["s_simulated"])))
        best = abs(series["s_simulated"][k])
        assert best > 2
        assert abs(best - abs(series["s_analytic"][k])) < 4 * series["s_err"][k]

    def test_noise_scaling(self, capsys):
        code, out, _ = run(capsys, "simulate", "--row", "1", "--noise", "0.3",
                           "--pairs", "100000", "--seed", "1")
        assert code == 0
        series = serialization.series_from_csv(out)
        target = chsh.horodecki_smax(states.mix_with_white_noise(
            states.make_named_state("phi+"), 0.3))
        assert target == pytest.approx(0.7 * 2 * R2)
        k = int(np.argmax(np.abs(series["s_simulated"])))
        assert abs(abs(series["s_simulated"][k]) - target) < 4 * series["s_err"][k] + 0.01
        np.testing.assert_allclose(np.abs(series["s_analytic"]).max(), target, atol=5e-3)
