import pytest

import cascadelab as cl
from cascadelab.cli import main


def run_cli(*argv):
    return main([str(a) for a in argv])


@pytest.fixture()
def security_file(tmp_path):
    path = tmp_path / "sec.graph"
    assert run_cli("generate", "--model", "security", "--n", 800, "--d", 4,
                   "--a", 1.5, "--seed", 3, "--out", path) == 0
    return path


def test_generate_writes_loadable_graph(tmp_path, capsys):
    path = tmp_path / "er.graph"
    assert run_cli("generate", "--model", "er", "--n", 200, "--d", 4,
                   "--seed", 9, "--out", path) == 0
    g = cl.load_graph(path)
    assert g == cl.gen_er(200, 4, master_seed=9)
    assert "wrote" in capsys.readouterr().out


def test_generate_security_requires_a(tmp_path, capsys):
    code = run_cli("generate", "--model", "security", "--n", 100, "--d", 4,
                   "--seed", 1, "--out", tmp_path / "x.graph")
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_cascade_uniform_and_random(security_file, tmp_path):
    out = tmp_path / "cascade.csv"
    assert run_cli("cascade", "--graph", security_file, "--attack", "top",
                   "--k", 5, "--thresholds", "uniform:0.2", "--trials", 2,
                   "--seed", 4, "--out", out) == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == ("trial,threshold_mode,phi_or_seed,attack_size,"
                        "infected,infected_fraction,rounds")
    assert len(lines) == 3
    assert lines[1].split(",")[1] == "uniform"

    assert run_cli("cascade", "--graph", security_file, "--attack", "top",
                   "--k", 5, "--thresholds", "random", "--trials", 3,
                   "--seed", 4, "--out", out) == 0
    rows = [line.split(",") for line in out.read_text().strip().split("\n")[1:]]
    assert len(rows) == 3
    assert len({r[2] for r in rows}) == 3  # distinct derived trial seeds


def test_cascade_ids_attack(security_file, tmp_path):
    ids = tmp_path / "attack.txt"
    ids.write_text("1\n5\n9\n")
    out = tmp_path / "c.csv"
    assert run_cli("cascade", "--graph", security_file, "--attack",
                   f"ids:{ids}", "--thresholds", "uniform:0.5",
                   "--out", out) == 0
    assert out.read_text().strip().split("\n")[1].split(",")[3] == "3"


def test_cascade_bad_thresholds(security_file, tmp_path, capsys):
    assert run_cli("cascade", "--graph", security_file, "--thresholds",
                   "nope", "--out", tmp_path / "c.csv") == 2


def test_injure_sweep(security_file, tmp_path):
    out = tmp_path / "inj.csv"
    assert run_cli("injure", "--graph", security_file, "--attack", "top",
                   "--k", 6, "--out", out) == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "attack_size,injured,injured_fraction"
    assert [int(line.split(",")[0]) for line in lines[1:]] == [1, 2, 3, 4, 5, 6]


@pytest.mark.parametrize("report,header", [
    ("communities", "color,seed,size"),
    ("conductance", "color,size,volume,cut,conductance"),
    ("degree-priority",
     "node,color,is_seed,degree,length,first_degree,second_degree,own_color_first"),
    ("powerlaw", "n_samples,d_min,exponent,ccdf_r2"),
    ("distances", "pairs_sampled,pairs_unreachable,avg_distance,est_diameter"),
    ("ptree", "vertices,edges,is_tree,height,violations"),
    ("diameters", "color,diameter"),
    ("navigate", "pair,u,v,success,hops,visited"),
])
def test_analyze_reports(security_file, tmp_path, report, header):
    out = tmp_path / f"{report}.csv"
    assert run_cli("analyze", "--graph", security_file, "--report", report,
                   "--pairs", 20, "--out", out) == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == header
    assert len(lines) >= 2


def test_analyze_uncolored_graph_errors(tmp_path, capsys):
    path = tmp_path / "er.graph"
    run_cli("generate", "--model", "er", "--n", 100, "--d", 4, "--seed", 0,
            "--out", path)
    assert run_cli("analyze", "--graph", path, "--report", "communities",
                   "--out", tmp_path / "c.csv") == 2


def test_experiment_cli_roundtrip(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("experiment=fig2\nmodels=er\nn_list=60\nd=4\ntrials=2\n")
    out = tmp_path / "run"
    assert run_cli("experiment", "--config", cfg, "--seed", 8,
                   "--out", out) == 0
    assert (out / "fig2.csv").exists()
    assert (out / "manifest.txt").exists()
    # rerun resumes
    assert run_cli("experiment", "--config", cfg, "--seed", 8,
                   "--out", out) == 0
    assert "skipped" in capsys.readouterr().out


def test_experiment_cli_stdout_without_out(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("experiment=fig2\nmodels=er\nn_list=60\nd=4\ntrials=1\n")
    assert run_cli("experiment", "--config", cfg) == 0
    assert capsys.readouterr().out.startswith("model,n,d,a,")


def test_experiment_cli_fig_override(tmp_path):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("experiment=fig2\nmodels=er\nn_list=60\nd=4\ntrials=1\n"
                   "phi_grid=0.2,0.5\n")
    out = tmp_path / "run3"
    assert run_cli("experiment", "--config", cfg, "--fig", 3,
                   "--out", out) == 0
    assert (out / "fig3.csv").exists()


def test_experiment_cli_config_error(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("experiment=fig1\nmodels=security\nd=4\na=1.5\nn_list=60\n")
    assert run_cli("experiment", "--config", cfg) == 2
    assert "error" in capsys.readouterr().err


def test_experiment_cli_missing_config_file(tmp_path):
    assert run_cli("experiment", "--config", tmp_path / "nope.cfg") == 2
