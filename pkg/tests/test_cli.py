"""End-to-end CLI behavior: flags, exit codes, formats, cache, determinism."""

import json
import os
import subprocess
import sys

import pytest

from normgraph.graph import make_graph, witness_to_json


def run(*argv, cache=None):
    env = os.environ.copy()
    if cache is not None:
        env["NORMGRAPH_CACHE"] = str(cache)
    return subprocess.run(
        [sys.executable, "-m", "normgraph", *map(str, argv)],
        capture_output=True,
        text=True,
        env=env,
    )


class TestUsage:
    def test_no_subcommand(self):
        assert run().returncode == 2

    def test_unknown_subcommand(self):
        assert run("frobnicate").returncode == 2

    def test_missing_required_flag(self):
        assert run("sieve").returncode == 2


class TestSieve:
    def test_text_150(self, tmp_path):
        r = run("sieve", "--limit", 150, cache=tmp_path)
        assert r.returncode == 0
        lines = r.stdout.splitlines()
        assert lines[:3] == ["7", "37", "139"]
        assert lines[3] == (
            "3 qualifying of 35 primes up to 150; ratio 0.085714 (target 0.111111)"
        )

    def test_empty_below_seven(self, tmp_path):
        r = run("sieve", "--limit", 6, cache=tmp_path)
        assert r.returncode == 0
        assert r.stdout.splitlines() == [
            "0 qualifying of 3 primes up to 6; ratio 0.000000 (target 0.111111)"
        ]

    def test_json_summary_keys(self, tmp_path):
        r = run("sieve", "--limit", 150, "--format", "json", cache=tmp_path)
        data = json.loads(r.stdout)
        assert list(data) == ["limit", "count", "pi", "ratio", "target"]
        assert data["limit"] == 150
        assert data["count"] == 3
        assert data["pi"] == 35
        assert data["ratio"] == pytest.approx(3 / 35)
        assert data["target"] == pytest.approx(1 / 9)

    def test_csv_format(self, tmp_path):
        r = run("sieve", "--limit", 30, "--format", "csv", cache=tmp_path)
        lines = r.stdout.splitlines()
        assert lines[0] == "p,qualifying,reason"
        assert len(lines) == 11  # ten primes below 30
        assert lines[4].startswith("7,1,")

    def test_limit_too_small(self, tmp_path):
        assert run("sieve", "--limit", 1, cache=tmp_path).returncode == 2

    def test_cache_roundtrip_same_stdout(self, tmp_path):
        first = run("sieve", "--limit", 200, cache=tmp_path)
        files = list((tmp_path).glob("sieve-200-*.csv"))
        assert len(files) == 1
        second = run("sieve", "--limit", 200, cache=tmp_path)
        assert first.stdout == second.stdout
        assert "cache hit" in second.stderr

    def test_tampered_cache_recomputed(self, tmp_path):
        first = run("sieve", "--limit", 200, cache=tmp_path)
        f = next(tmp_path.glob("sieve-200-*.csv"))
        f.write_text(f.read_text().replace("7,1,", "7,0,", 1))
        again = run("sieve", "--limit", 200, cache=tmp_path)
        assert again.stdout == first.stdout
        assert "failed re-verification" in again.stderr
        # the rewritten entry is clean again
        assert "7,1," in f.read_text()

    def test_no_cache_writes_nothing(self, tmp_path):
        run("sieve", "--limit", 100, "--no-cache", cache=tmp_path)
        assert list(tmp_path.glob("*")) == []

    def test_jobs_do_not_change_bytes(self, tmp_path):
        outs = {
            run(
                "sieve", "--limit", 3000, "--no-cache", "--format", "csv",
                "--jobs", j, cache=tmp_path,
            ).stdout
            for j in (1, 2, 8)
        }
        assert len(outs) == 1


class TestWitness46:
    def test_default_prime_seven(self, tmp_path):
        r = run("witness46", cache=tmp_path)
        assert r.returncode == 0
        assert "adjacency checks: 24/24 passed" in r.stdout
        assert "identity checks: 24/24 passed" in r.stdout
        assert "result: PASS" in r.stdout

    def test_json_format_parses(self, tmp_path):
        r = run("witness46", "--format", "json", cache=tmp_path)
        data = json.loads(r.stdout)
        assert data["p"] == 7 and data["t"] == 4
        assert data["modulus"] == [5, 0, 0, 1]
        assert len(data["L"]) == 4 and len(data["R"]) == 6
        assert data["verified"] is True
        assert "24/24" in r.stderr

    def test_ten_distinct_vertices(self, tmp_path):
        data = json.loads(run("witness46", "--format", "json", cache=tmp_path).stdout)
        seen = {(tuple(v["alpha"]), v["a"]) for v in data["L"] + data["R"]}
        assert len(seen) == 10

    def test_non_qualifying_rejected(self, tmp_path):
        r = run("witness46", "--p", 13, cache=tmp_path)
        assert r.returncode == 1
        assert r.stdout.startswith("not qualifying:")

    def test_composite_rejected(self, tmp_path):
        r = run("witness46", "--p", 8, cache=tmp_path)
        assert r.returncode == 1
        assert "not qualifying" in r.stdout

    def test_larger_qualifying_prime(self, tmp_path):
        assert run("witness46", "--p", 37, cache=tmp_path).returncode == 0

    def test_all_orderings(self, tmp_path):
        r = run("witness46", "--all-orderings", cache=tmp_path)
        assert r.returncode == 0
        ordering_lines = [
            ln for ln in r.stdout.splitlines() if ln.startswith("root ordering")
        ]
        assert len(ordering_lines) == 6
        assert all("PASS, vertex set identical" in ln for ln in ordering_lines)

    def test_output_file_then_verify(self, tmp_path):
        out = tmp_path / "w.json"
        r = run("witness46", "--output", out, cache=tmp_path)
        assert r.returncode == 0
        v = run("verify", out, cache=tmp_path)
        assert v.returncode == 0
        assert "canonical 4x6" in v.stdout
        assert "result: PASS" in v.stdout


class TestCensus:
    def test_exhaustive_p3_t4(self, tmp_path):
        r = run("census", "--p", 3, "--t", 4, "--k", 4, cache=tmp_path)
        assert r.returncode == 0
        assert "max common neighbors over 4-subsets: 4" in r.stdout
        assert "within bound" in r.stdout

    def test_exhaustive_p5_t3_json(self, tmp_path):
        r = run(
            "census", "--p", 5, "--t", 3, "--k", 3, "--format", "json",
            cache=tmp_path,
        )
        data = json.loads(r.stdout)
        assert data["max_common"] == 2
        assert data["bound"] == 2
        assert data["within_bound"] is True
        assert r.returncode == 0

    def test_infeasible_exhaustive_needs_sample(self, tmp_path):
        r = run("census", "--p", 7, "--t", 4, "--k", 4, cache=tmp_path)
        assert r.returncode == 2
        assert "--sample" in r.stderr

    def test_sampled_with_planted_witness(self, tmp_path):
        r = run(
            "census", "--p", 7, "--t", 4, "--k", 4, "--sample",
            "--trials", 2000, cache=tmp_path,
        )
        assert r.returncode == 0
        assert "planted=witness-quadruple" in r.stdout
        assert "max common neighbors over 4-subsets: 6" in r.stdout

    def test_k_not_t_skips_bound(self, tmp_path):
        r = run("census", "--p", 3, "--t", 4, "--k", 2, cache=tmp_path)
        assert r.returncode == 0
        assert "bound" not in r.stdout

    def test_bad_graph_params(self, tmp_path):
        assert run("census", "--p", 4, "--t", 4, "--k", 4, cache=tmp_path).returncode == 2
        assert run("census", "--p", 3, "--t", 4, "--k", 0, cache=tmp_path).returncode == 2

    def test_jobs_do_not_change_bytes(self, tmp_path):
        outs = {
            run(
                "census", "--p", 3, "--t", 4, "--k", 4, "--jobs", j,
                cache=tmp_path,
            ).stdout
            for j in (1, 2)
        }
        assert len(outs) == 1

    def test_sample_seed_changes_draws(self, tmp_path):
        a = run(
            "census", "--p", 3, "--t", 3, "--k", 3, "--sample", "--trials", 50,
            "--seed", 0, "--format", "json", cache=tmp_path,
        )
        b = run(
            "census", "--p", 3, "--t", 3, "--k", 3, "--sample", "--trials", 50,
            "--seed", 1, "--format", "json", cache=tmp_path,
        )
        assert json.loads(a.stdout)["seed"] == 0
        assert json.loads(b.stdout)["seed"] == 1


class TestVerify:
    def test_general_witness_roundtrip(self, tmp_path):
        out = tmp_path / "g.json"
        r = run(
            "witness-general", "--t", 4, "--m", 2, "--limit", 20,
            "--output", out, cache=tmp_path,
        )
        assert r.returncode == 0
        v = run("verify", out, cache=tmp_path)
        assert v.returncode == 0
        assert "general 3x2" in v.stdout

    def test_byte_edited_general_fails(self, tmp_path):
        out = tmp_path / "g.json"
        run("witness-general", "--t", 4, "--m", 2, "--limit", 20, "--output", out,
            cache=tmp_path)
        data = json.loads(out.read_text())
        data["B"][0]["a"] = data["B"][0]["a"] % (data["p"] - 1) + 1
        out.write_text(json.dumps(data))
        assert run("verify", out, cache=tmp_path).returncode == 1

    def test_shift_tamper_reducible_modulus_fails(self, tmp_path):
        out = tmp_path / "g.json"
        run("witness-general", "--t", 4, "--m", 2, "--limit", 20, "--output", out,
            cache=tmp_path)
        data = json.loads(out.read_text())
        data["r"] = 10  # x^3 - x + 6 - 10 has a root mod 17
        out.write_text(json.dumps(data))
        v = run("verify", out, cache=tmp_path)
        assert v.returncode == 1
        assert "witness invalid" in v.stdout

    def test_truncated_file(self, tmp_path):
        out = tmp_path / "w.json"
        run("witness46", "--output", out, cache=tmp_path)
        out.write_text(out.read_text()[:100])
        assert run("verify", out, cache=tmp_path).returncode == 2

    def test_missing_file(self, tmp_path):
        assert run("verify", tmp_path / "absent.json", cache=tmp_path).returncode == 2

    def test_non_object_json(self, tmp_path):
        out = tmp_path / "arr.json"
        out.write_text("[1, 2, 3]")
        assert run("verify", out, cache=tmp_path).returncode == 2

    def test_unrecognized_schema(self, tmp_path):
        out = tmp_path / "odd.json"
        out.write_text(json.dumps({"hello": "world"}))
        assert run("verify", out, cache=tmp_path).returncode == 2

    def test_out_of_range_vertex_is_malformed(self, tmp_path):
        out = tmp_path / "w.json"
        run("witness46", "--output", out, cache=tmp_path)
        data = json.loads(out.read_text())
        data["R"][0]["alpha"][0] = 7
        out.write_text(json.dumps(data))
        assert run("verify", out, cache=tmp_path).returncode == 2

    def test_plain_graph_biclique(self, tmp_path):
        G = make_graph(3, 3)
        u = G.vertex_from_id(0)
        v = G.neighbors(u)[0]
        out = tmp_path / "pair.json"
        out.write_text(json.dumps(witness_to_json(G, [u], [v], True)))
        r = run("verify", out, cache=tmp_path)
        assert r.returncode == 0
        assert "graph biclique" in r.stdout

    def test_overlapping_sides_fail(self, tmp_path):
        G = make_graph(3, 3)
        u = G.vertex_from_id(0)
        out = tmp_path / "loop.json"
        out.write_text(json.dumps(witness_to_json(G, [u], [u], True)))
        r = run("verify", out, cache=tmp_path)
        assert r.returncode == 1
        assert "not disjoint" in r.stdout


class TestExport:
    def test_p3_t3_to_file(self, tmp_path):
        out = tmp_path / "edges.txt"
        r = run("export", "--p", 3, "--t", 3, "--output", out, cache=tmp_path)
        assert r.returncode == 0
        assert r.stdout.splitlines() == ["vertices: 18", "edges: 68"]
        lines = out.read_text().splitlines()
        assert len(lines) == 68
        pairs = [tuple(map(int, ln.split())) for ln in lines]
        assert all(u < v for u, v in pairs)
        assert pairs == sorted(pairs)

    def test_stdout_mode(self, tmp_path):
        r = run("export", "--p", 3, "--t", 3, cache=tmp_path)
        assert len(r.stdout.splitlines()) == 68
        assert "vertices: 18" in r.stderr

    def test_p3_t4_vertex_count(self, tmp_path):
        out = tmp_path / "edges.txt"
        r = run("export", "--p", 3, "--t", 4, "--output", out, cache=tmp_path)
        assert "vertices: 54" in r.stdout

    def test_size_guard(self, tmp_path):
        assert run("export", "--p", 101, "--t", 4, cache=tmp_path).returncode == 2

    def test_bad_params(self, tmp_path):
        assert run("export", "--p", 6, "--t", 3, cache=tmp_path).returncode == 2


class TestWitnessGeneral:
    def test_single_result_json(self, tmp_path):
        r = run("witness-general", "--t", 4, "--m", 2, "--limit", 20, cache=tmp_path)
        assert r.returncode == 0
        data = json.loads(r.stdout)
        assert (data["p"], data["r"]) == (17, 8)
        assert data["thetas"] == [6, 11]
        assert data["verified"] is True

    def test_all_results_array(self, tmp_path):
        r = run(
            "witness-general", "--t", 4, "--m", 2, "--limit", 20, "--all",
            cache=tmp_path,
        )
        data = json.loads(r.stdout)
        assert [(d["p"], d["r"]) for d in data] == [(17, 8), (17, 9)]
        assert all(d["verified"] for d in data)

    def test_empty_search_exits_one(self, tmp_path):
        r = run("witness-general", "--t", 4, "--m", 2, "--limit", 10, cache=tmp_path)
        assert r.returncode == 1
        assert "no parameters found" in r.stderr

    def test_text_format(self, tmp_path):
        r = run(
            "witness-general", "--t", 4, "--m", 2, "--limit", 20,
            "--format", "text", cache=tmp_path,
        )
        assert r.stdout.splitlines() == ["t=4 m=2 p=17 r=8 verified=True"]

    def test_bad_t_is_usage_error(self, tmp_path):
        assert run("witness-general", "--t", 3, "--m", 2, "--limit", 20,
                   cache=tmp_path).returncode == 2

    def test_deterministic_across_jobs(self, tmp_path):
        outs = {
            run(
                "witness-general", "--t", 4, "--m", 1, "--limit", 60, "--all",
                "--jobs", j, cache=tmp_path,
            ).stdout
            for j in (1, 2, 8)
        }
        assert len(outs) == 1
