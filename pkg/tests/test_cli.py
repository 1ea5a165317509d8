import numpy as np
import pytest

from staexpand.cli import main


def read_lines(path):
    return path.read_text(encoding="utf-8").splitlines()


def data_rows(lines):
    body = [l for l in lines if l and not l.startswith("#")]
    return body[0].split(","), [r.split(",") for r in body[1:]]


class TestProtocolCommand:
    def test_quintic_boundaries(self, tmp_path):
        out = tmp_path / "p.csv"
        assert main([
            "protocol", "--family", "quintic", "--gamma", "10",
            "--tf-dimensionless", "25", "--grid", "101", "--out", str(out),
        ]) == 0
        header, rows = data_rows(read_lines(out))
        assert header == ["t", "b", "bdot", "bddot", "omega2", "omega2_negative"]
        assert float(rows[0][1]) == 1.0
        assert float(rows[-1][1]) == 10.0

    def test_dirac_impulse_headers(self, tmp_path):
        out = tmp_path / "d.csv"
        main([
            "protocol", "--family", "dirac", "--gamma", "10",
            "--tf-dimensionless", "1", "--grid", "101", "--out", str(out),
        ])
        lines = read_lines(out)
        impulses = [l for l in lines if l.startswith("# impulse")]
        assert len(impulses) == 2
        assert "strength=-" in impulses[0]  # launching kick is always negative

    def test_no_expansion_flat_column(self, tmp_path):
        out = tmp_path / "f.csv"
        main([
            "protocol", "--family", "quintic", "--gamma", "1",
            "--tf-dimensionless", "2", "--grid", "51", "--out", str(out),
        ])
        _, rows = data_rows(read_lines(out))
        assert all(float(r[1]) == 1.0 for r in rows)

    def test_byte_stable(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = [
            "protocol", "--family", "septic", "--gamma", "10",
            "--tf-dimensionless", "5", "--c3", "7.5", "--grid", "101",
        ]
        main(args + ["--out", str(a)])
        main(args + ["--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_si_mode_time_column_in_seconds(self, tmp_path):
        out = tmp_path / "si.csv"
        main([
            "protocol", "--family", "quintic", "--omega0-hz", "2500",
            "--omegaf-hz", "25", "--tf", "1e-3", "--grid", "51", "--out", str(out),
        ])
        _, rows = data_rows(read_lines(out))
        assert float(rows[-1][0]) == pytest.approx(1e-3, rel=1e-12)

    def test_rejects_conflicting_trap_input(self, tmp_path):
        with pytest.raises(SystemExit):
            main([
                "protocol", "--family", "quintic", "--gamma", "10",
                "--omega0-hz", "2500", "--omegaf-hz", "25",
                "--tf-dimensionless", "1",
            ])

    def test_rejects_invalid_protocol_params(self):
        with pytest.raises(SystemExit):
            main([
                "protocol", "--family", "bang_bang", "--gamma", "10",
                "--omega1", "1", "--omega2", "0.05",  # below sqrt(omega0 omega_f)
            ])


class TestEnergyCommand:
    def test_quintic_summary_passes_virial(self, tmp_path):
        out = tmp_path / "e.csv"
        main([
            "energy", "--family", "quintic", "--gamma", "10",
            "--tf-dimensionless", "25", "--grid", "501", "--out", str(out),
        ])
        text = out.read_text(encoding="utf-8")
        assert "virial |K/V - 1|" in text and "-> PASS" in text

    def test_dirac_equality_summary(self, tmp_path):
        out = tmp_path / "e.csv"
        main([
            "energy", "--family", "dirac", "--gamma", "10",
            "--tf-dimensionless", "1", "--out", str(out),
        ])
        lines = read_lines(out)
        avg = float(next(l for l in lines if "avg_E =" in l).split("=")[1].split("(")[0])
        bound = float(
            next(l for l in lines if "bound E_nL" in l).split("=")[1].split("respected")[0]
        )
        assert avg == pytest.approx(bound, rel=1e-6)

    def test_linear_bottom_skips_virial(self, tmp_path):
        out = tmp_path / "e.csv"
        main([
            "energy", "--family", "linear_bottom", "--gamma", "10",
            "--tf-dimensionless", "1", "--grid", "501", "--out", str(out),
        ])
        text = out.read_text(encoding="utf-8")
        assert "virial check SKIPPED" in text


class TestSweepCommand:
    def test_fig1_bound_below_values_and_endpoint(self, tmp_path):
        out = tmp_path / "sw"
        main([
            "sweep", "--preset", "fig1", "--out", str(out),
            "--points-per-decade", "8", "--grid", "501", "--tf-min", "1e-4",
        ])
        for fam in ("quintic", "bang_bang", "bound"):
            assert (out / f"fig1_{fam}.csv").exists()
        _, rows = data_rows(read_lines(out / "fig1_bang_bang.csv"))
        filled = [r for r in rows if r[1]]
        # terminates at t_f max = 1 ms with the minimal averaged energy
        assert float(filled[-1][0]) == pytest.approx(1e-3, rel=1e-9)
        assert float(filled[-1][1]) == pytest.approx(0.2525, abs=1e-9)
        for fam in ("quintic", "bang_bang"):
            _, rows = data_rows(read_lines(out / f"fig1_{fam}.csv"))
            for r in rows:
                if r[1]:
                    assert float(r[1]) >= float(r[2]) * (1.0 - 1e-6)
        # slower protocols cost less: the quintic column decreases in t_f
        _, rows = data_rows(read_lines(out / "fig1_quintic.csv"))
        vals = [float(r[1]) for r in rows if r[1]]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_fig3_infeasible_points_carry_reasons(self, tmp_path):
        out = tmp_path / "sw3"
        main([
            "sweep", "--preset", "fig3", "--out", str(out),
            "--points-per-decade", "4", "--grid", "301",
        ])
        _, rows = data_rows(read_lines(out / "fig3_na_bang_bang.csv"))
        empties = [r for r in rows if not r[1]]
        assert empties and all(r[3] for r in empties)
        _, rows = data_rows(read_lines(out / "fig3_hybrid.csv"))
        for r in rows:
            if r[1]:
                assert float(r[1]) >= float(r[2]) * (1.0 - 1e-6)


class TestPowerCommand:
    def test_fig4_peaks_ordered(self, tmp_path):
        out = tmp_path / "p4.csv"
        main(["power", "--preset", "fig4", "--grid", "801", "--out", str(out)])
        lines = read_lines(out)
        qpeak = float(next(l for l in lines if "quintic peak" in l).split("=")[1])
        speak = float(next(l for l in lines if "septic optimized" in l).split("peak |P_rel| =")[1])
        assert 1.0 <= speak <= qpeak
        _, rows = data_rows(lines)
        arr = np.array([[float(x) for x in r] for r in rows])
        # both relative-power curves integrate to one over s
        for col in (1, 2):
            assert np.trapezoid(arr[:, col], arr[:, 0]) == pytest.approx(1.0, abs=1e-4)


class TestConfigFile:
    def test_flags_override_file(self, tmp_path):
        cfgfile = tmp_path / "run.cfg"
        cfgfile.write_text(
            "family = quintic\ngamma = 10\ntf-dimensionless = 25\ngrid = 51\n",
            encoding="utf-8",
        )
        out = tmp_path / "o.csv"
        main(["protocol", "--config", str(cfgfile), "--grid", "101", "--out", str(out)])
        _, rows = data_rows(read_lines(out))
        assert len(rows) == 101  # flag wins over the file


def test_verify_command_reports_known_failure(capsys):
    # small grid keeps it fast; the logarithmic asymptote check is the one
    # documented honest failure
    code = main(["verify", "--grid", "301"])
    out = capsys.readouterr().out
    assert code == 1
    failures = [l for l in out.splitlines() if l.startswith("FAIL")]
    assert len(failures) == 1
    assert "bang_bang_log_asymptote" in failures[0]
