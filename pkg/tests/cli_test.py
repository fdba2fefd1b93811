import csv
import json
from pathlib import Path

import numpy as np
import pytest

from miocp.cli import build_parser, main
from miocp.core import (
    dump_spec,
    evaluate_objective,
    load_policy,
    load_prior,
    meocp_policy,
    two_state_experiment_spec,
)
from miocp.facade import ExperimentFacade
from miocp.models import Command, Gaussian, PriorSequence, RunManifest
from miocp.services.solve_service import TRACE_COLUMNS


def _read_csv(path: Path):
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    return rows[0], rows[1:]


def _read_json(path: Path):
    with open(path) as f:
        return json.load(f)


class TestCommandLine:

    def setup_method(self):
        self.spec = two_state_experiment_spec(epsilon=4.0, T=10)

    @pytest.fixture
    def spec_path(self, tmp_path):
        return dump_spec(self.spec, tmp_path / "instance.json")

    def test_solve_writes_trace(self, spec_path, tmp_path):
        out = tmp_path / "run"
        assert main(["solve", "--spec", str(spec_path), "--out", str(out),
                     "--max-iters", "20"]) == 0
        header, rows = _read_csv(out / "trace.csv")
        assert tuple(header) == TRACE_COLUMNS
        assert len(rows) == 20
        assert [int(r[0]) for r in rows] == list(range(20))
        totals = [float(r[1]) for r in rows]
        for before, after in zip(totals, totals[1:]):
            assert after <= before + 1e-9
        for row in rows:
            total, quad, kl, terminal = (float(v) for v in row[1:5])
            assert total == pytest.approx(quad + kl + terminal, rel=1e-12)

        for name in ("policy.json", "prior.json", "summary.json", "distance_to_final.csv"):
            assert (out / name).exists()
        summary = _read_json(out / "summary.json")
        assert summary["iterations"] == 20
        assert summary["final_J"] == totals[-1]

    def test_single_iteration(self, spec_path, tmp_path):
        out = tmp_path / "run"
        assert main(["solve", "--spec", str(spec_path), "--out", str(out),
                     "--max-iters", "1"]) == 0
        _, rows = _read_csv(out / "trace.csv")
        assert len(rows) == 1
        assert _read_json(out / "summary.json")["converged"] is False
        _, distances = _read_csv(out / "distance_to_final.csv")
        assert [int(r[0]) for r in distances] == [0, 1]
        assert float(distances[-1][1]) == 0.0

    def test_evaluate_reproduces_last_trace_row(self, spec_path, tmp_path):
        out = tmp_path / "run"
        assert main(["solve", "--spec", str(spec_path), "--out", str(out),
                     "--max-iters", "8"]) == 0
        assert main(["evaluate", "--spec", str(spec_path), "--out", str(out)]) == 0
        _, rows = _read_csv(out / "trace.csv")
        objective = _read_json(out / "objective.json")
        assert objective["total"] == float(rows[-1][1])

    def test_policy_file_reloads(self, spec_path, tmp_path):
        out = tmp_path / "run"
        assert main(["solve", "--spec", str(spec_path), "--out", str(out),
                     "--max-iters", "3"]) == 0
        policy = load_policy(out / "policy.json")
        prior = load_prior(out / "prior.json")
        assert policy.T == 10
        assert prior.T == 10
        assert policy.P[0].shape == (1, 2)

    def test_simulate(self, spec_path, tmp_path):
        out = tmp_path / "sim"
        assert main(["simulate", "--spec", str(spec_path), "--out", str(out),
                     "--max-iters", "5", "--paths", "40", "--seed", "3"]) == 0
        header, rows = _read_csv(out / "paths.csv")
        assert header == ["path_id", "k", "x0", "x1", "u0"]
        assert len(rows) == 40 * 11
        assert rows[10][4] == ""
        _, scatter = _read_csv(out / "terminal_scatter.csv")
        assert len(scatter) == 40
        regression = _read_json(out / "terminal_regression.json")
        assert regression["num_paths"] == 40
        assert regression["seed"] == 3
        summary = _read_json(out / "summary.json")
        assert summary["solve"]["iterations"] == 5

    def test_simulate_with_stored_policy_is_reproducible(self, spec_path, tmp_path):
        out = tmp_path / "run"
        assert main(["solve", "--spec", str(spec_path), "--out", str(out),
                     "--max-iters", "5"]) == 0
        for name in ("a", "b"):
            assert main(["simulate", "--spec", str(spec_path), "--out", str(tmp_path / name),
                         "--policy", str(out / "policy.json"), "--paths", "25"]) == 0
        assert ((tmp_path / "a" / "paths.csv").read_text() ==
                (tmp_path / "b" / "paths.csv").read_text())

    def test_simulate_single_path_fails(self, spec_path, tmp_path, capsys):
        code = main(["simulate", "--spec", str(spec_path), "--out", str(tmp_path / "sim"),
                     "--max-iters", "2", "--paths", "1"])
        assert code == 1
        assert "at least 2 paths" in capsys.readouterr().err

    def test_larger_epsilon_spreads_terminal_states(self, spec_path, tmp_path):
        spreads = {}
        for eps in ("0.1", "4"):
            out = tmp_path / eps
            assert main(["simulate", "--spec", str(spec_path), "--out", str(out),
                         "--epsilon", eps, "--max-iters", "30", "--paths", "500"]) == 0
            spreads[eps] = _read_json(out / "summary.json")["terminal_trace_cov"]
        assert spreads["4"] > spreads["0.1"]

    def test_sweep(self, spec_path, tmp_path):
        out = tmp_path / "sweep"
        assert main(["sweep", "--spec", str(spec_path), "--out", str(out),
                     "--epsilon", "0.1,4", "--max-iters", "5", "--paths", "20"]) == 0
        assert (out / "eps_0.1" / "trace.csv").exists()
        assert (out / "eps_4" / "terminal_scatter.csv").exists()
        header, rows = _read_csv(out / "sweep_summary.csv")
        assert header == ["epsilon", "iterations", "converged", "J_total",
                          "terminal_trace_cov"]
        assert [float(r[0]) for r in rows] == [0.1, 4.0]
        assert all(r[4] != "" for r in rows)

    def test_sweep_needs_epsilon(self, spec_path, tmp_path):
        with pytest.raises(SystemExit) as info:
            main(["sweep", "--spec", str(spec_path), "--out", str(tmp_path)])
        assert info.value.code == 2

    def test_sweep_keeps_close_epsilons_apart(self, spec_path, tmp_path):
        out = tmp_path / "sweep"
        assert main(["sweep", "--spec", str(spec_path), "--out", str(out),
                     "--epsilon", "0.1,0.1000001", "--max-iters", "2"]) == 0
        assert (out / "eps_0.1" / "trace.csv").exists()
        assert (out / "eps_0.1000001" / "trace.csv").exists()
        _, rows = _read_csv(out / "sweep_summary.csv")
        assert [float(r[0]) for r in rows] == [0.1, 0.1000001]

    def test_sweep_rejects_duplicate_epsilon(self, spec_path, tmp_path):
        with pytest.raises(SystemExit) as info:
            main(["sweep", "--spec", str(spec_path), "--out", str(tmp_path),
                  "--epsilon", "0.5,4,0.50"])
        assert info.value.code == 2

    def test_single_command_rejects_epsilon_list(self, spec_path, tmp_path):
        with pytest.raises(SystemExit):
            main(["solve", "--spec", str(spec_path), "--out", str(tmp_path),
                  "--epsilon", "0.1,4"])

    def test_invalid_json(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"T": 3,\n  "A": [[1.0]],,\n}')
        assert main(["solve", "--spec", str(bad), "--out", str(tmp_path / "run")]) == 1
        assert "line 2" in capsys.readouterr().err

    def test_invalid_instance(self, tmp_path, capsys):
        path = tmp_path / "instance.json"
        data = json.loads(dump_spec(self.spec, path).read_text())
        data["R"] = [[-1.0]]
        path.write_text(json.dumps(data))
        assert main(["solve", "--spec", str(path), "--out", str(tmp_path / "run")]) == 1
        assert "R" in capsys.readouterr().err

    def test_evaluate_rejects_indefinite_policy_covariance(self, spec_path, tmp_path, capsys):
        out = tmp_path / "run"
        assert main(["solve", "--spec", str(spec_path), "--out", str(out),
                     "--max-iters", "2"]) == 0
        data = _read_json(out / "policy.json")
        data["sigma_pi"][3] = [[-abs(data["sigma_pi"][3][0][0])]]
        (out / "policy.json").write_text(json.dumps(data))
        assert main(["evaluate", "--spec", str(spec_path), "--out", str(out)]) == 1
        assert "sigma_pi not PD at k=3" in capsys.readouterr().err
        assert main(["simulate", "--spec", str(spec_path), "--out", str(out),
                     "--policy", str(out / "policy.json"), "--paths", "10"]) == 1

    def test_evaluate_meocp_against_flat_prior(self, spec_path, tmp_path):
        policy_path = tmp_path / "meocp_policy.json"
        prior_path = tmp_path / "flat_prior.json"
        policy = meocp_policy(self.spec)
        prior = PriorSequence.constant(Gaussian(np.zeros(1), 1e8 * np.eye(1)), self.spec.T)
        policy_path.write_text(json.dumps(policy.to_dict()))
        prior_path.write_text(json.dumps(prior.to_dict()))

        out = tmp_path / "eval"
        assert main(["evaluate", "--spec", str(spec_path), "--out", str(out),
                     "--policy", str(policy_path), "--prior", str(prior_path)]) == 0
        expected = evaluate_objective(self.spec, policy, prior).total
        assert _read_json(out / "objective.json")["total"] == pytest.approx(expected,
                                                                            rel=1e-12)

    def test_parser_defaults(self):
        args = build_parser().parse_args(["solve", "--spec", "a.json", "--out", "o"])
        assert args.seed == 0
        assert args.paths == 1000
        assert args.max_iters is None
        assert args.epsilon == ()

    def test_parser_rejects_bad_values(self):
        parser = build_parser()
        for argv in (["--paths", "0"], ["--seed", "-1"], ["--epsilon", "0,1"]):
            with pytest.raises(SystemExit):
                parser.parse_args(["solve", "--spec", "a.json", "--out", "o"] + argv)


class TestExperimentFacade:

    def setup_method(self):
        self.facade = ExperimentFacade.create()

    def test_commands(self):
        assert sorted(self.facade.commands()) == ["evaluate", "simulate", "solve", "sweep"]
        assert set(self.facade.list_services()) == {"solve", "simulate", "evaluate", "sweep"}

    def test_missing_spec_file(self, tmp_path):
        response = self.facade.execute(
            RunManifest(spec_path=tmp_path / "missing.json", command=Command.SOLVE,
                        output_dir=tmp_path / "run"))
        assert not response.ok
        assert response.data is None

    def test_missing_policy_file(self, tmp_path):
        spec_path = dump_spec(two_state_experiment_spec(T=3), tmp_path / "instance.json")
        response = self.facade.execute(
            RunManifest(spec_path=spec_path, command=Command.EVALUATE,
                        output_dir=tmp_path / "empty"))
        assert not response.ok

    def test_sweep_without_epsilons(self, tmp_path):
        spec_path = dump_spec(two_state_experiment_spec(T=3), tmp_path / "instance.json")
        response = self.facade.execute(
            RunManifest(spec_path=spec_path, command=Command.SWEEP, output_dir=tmp_path))
        assert not response.ok
        assert "epsilon" in response.message

    def test_sweep_with_repeated_epsilon(self, tmp_path):
        spec_path = dump_spec(two_state_experiment_spec(T=3), tmp_path / "instance.json")
        response = self.facade.execute(
            RunManifest(spec_path=spec_path, command=Command.SWEEP, output_dir=tmp_path,
                        epsilons=(0.5, 0.5)))
        assert not response.ok
        assert "distinct" in response.message
        assert not (tmp_path / "sweep_summary.csv").exists()

    def test_solve_response(self, tmp_path):
        spec_path = dump_spec(two_state_experiment_spec(T=3), tmp_path / "instance.json")
        response = self.facade.execute(
            RunManifest(spec_path=spec_path, command=Command.SOLVE,
                        output_dir=tmp_path / "run", max_iters=4))
        assert response.ok
        assert response.data["iterations"] == 4
        assert "J =" in response.message

    def test_service_name_conflict(self):
        with pytest.raises(AttributeError):
            ExperimentFacade({"execute": object()})
