import io
import sys

import pytest

from singlish.cli import main

TINY_CORPUS = "mama yanawaa\tමම යනවා\nmama kaema kanawaa\tමම කෑම කනවා\n"


def run(argv):
    return main(argv)


class TestTransliterate:
    def test_file_to_file(self, tmp_path):
        src = tmp_path / "in.txt"
        dst = tmp_path / "out.txt"
        src.write_text("mama yanawaa\n", encoding="utf-8")
        assert run(["transliterate", "--mode", "rule",
                    "--in", str(src), "--out", str(dst)]) == 0
        assert dst.read_text(encoding="utf-8") == "මම යනවා"

    def test_stdin_to_stdout(self, capsys, monkeypatch):
        monkeypatch.setattr(sys, "stdin", io.StringIO("kohomada"))
        assert run(["transliterate"]) == 0
        assert capsys.readouterr().out == "කොහොමද\n"

    def test_context_flag_changes_winner(self, capsys, monkeypatch):
        monkeypatch.setattr(sys, "stdin", io.StringIO("adaraya"))
        assert run(["transliterate", "--context", "මුදල්"]) == 0
        assert capsys.readouterr().out == "ආධාරය\n"

    def test_missing_input_file_is_one_error_line(self, tmp_path, capsys):
        assert run(["transliterate", "--in", str(tmp_path / "nope.txt")]) == 1
        err = capsys.readouterr().err
        assert err.startswith("error:") and err.count("\n") == 1

    def test_bad_config_reports_error(self, tmp_path, capsys):
        assert run(["transliterate", "--config", str(tmp_path / "nope.conf")]) == 1
        assert "error:" in capsys.readouterr().err


class TestGenerate:
    def test_writes_lexicon_and_summary(self, tmp_path, capsys):
        seeds = tmp_path / "seeds.txt"
        seeds.write_text("මම\nකවදද\n", encoding="utf-8")
        out = tmp_path / "lex.tsv"
        assert run(["generate", "--seeds", str(seeds), "--out", str(out)]) == 0
        assert "2 words ->" in capsys.readouterr().err
        body = out.read_text(encoding="utf-8")
        assert "මම" in body and "\t" in body

    def test_byte_deterministic(self, tmp_path):
        seeds = tmp_path / "seeds.txt"
        seeds.write_text("කොහොමද\nකියන්න\n", encoding="utf-8")
        a, b = tmp_path / "a.tsv", tmp_path / "b.tsv"
        assert run(["generate", "--seeds", str(seeds), "--out", str(a)]) == 0
        assert run(["generate", "--seeds", str(seeds), "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_limit_caps_variants(self, tmp_path):
        seeds = tmp_path / "seeds.txt"
        seeds.write_text("කොහොමද\n", encoding="utf-8")
        small, big = tmp_path / "s.tsv", tmp_path / "l.tsv"
        assert run(["generate", "--seeds", str(seeds), "--limit", "2",
                    "--out", str(small)]) == 0
        assert run(["generate", "--seeds", str(seeds), "--limit", "64",
                    "--out", str(big)]) == 0
        n_small = len(small.read_text(encoding="utf-8").splitlines())
        n_big = len(big.read_text(encoding="utf-8").splitlines())
        assert n_small < n_big


class TestTrain:
    def test_writes_model_file(self, tmp_path, capsys):
        corpus = tmp_path / "c.tsv"
        corpus.write_text(TINY_CORPUS, encoding="utf-8")
        out = tmp_path / "models.bin"
        assert run(["train", "--corpus", str(corpus), "--out", str(out)]) == 0
        assert out.read_bytes()[:5] == b"SWBH1"
        assert "2 sentences" in capsys.readouterr().err

    def test_byte_deterministic(self, tmp_path):
        corpus = tmp_path / "c.tsv"
        corpus.write_text(TINY_CORPUS, encoding="utf-8")
        a, b = tmp_path / "a.bin", tmp_path / "b.bin"
        assert run(["train", "--corpus", str(corpus), "--out", str(a)]) == 0
        assert run(["train", "--corpus", str(corpus), "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_no_corpus_anywhere_is_an_error(self, tmp_path, capsys):
        conf = tmp_path / "engine.conf"
        conf.write_text("corpus =\n", encoding="utf-8")
        out = tmp_path / "models.bin"
        assert run(["train", "--config", str(conf), "--out", str(out)]) == 1
        assert "no corpus" in capsys.readouterr().err


class TestEval:
    def write_testset(self, tmp_path, with_slots=False):
        p = tmp_path / "test.tsv"
        if with_slots:
            p.write_text("adaraya hondai\tආදරය හොඳයි\t0:ආදරය\n", encoding="utf-8")
        else:
            p.write_text(
                "mama yanawaa\tමම යනවා\nkohomada\tකොහොමද\n", encoding="utf-8"
            )
        return p

    def test_kv_output(self, tmp_path, capsys):
        testset = self.write_testset(tmp_path)
        assert run(["eval", "--testset", str(testset)]) == 0
        out = capsys.readouterr().out
        assert "wer\t0.000000" in out and "cer\t0.000000" in out

    def test_table_output_to_file(self, tmp_path):
        testset = self.write_testset(tmp_path)
        dst = tmp_path / "report.txt"
        assert run(["eval", "--testset", str(testset), "--format", "table",
                    "--out", str(dst)]) == 0
        assert "wer" in dst.read_text(encoding="utf-8")

    def test_disambiguation_mode_reports_f1(self, tmp_path, capsys):
        testset = self.write_testset(tmp_path, with_slots=True)
        assert run(["eval", "--testset", str(testset),
                    "--eval-mode", "disambiguation"]) == 0
        assert "f1\t" in capsys.readouterr().out

    def test_malformed_testset_reports_error(self, tmp_path, capsys):
        p = tmp_path / "bad.tsv"
        p.write_text("only one column\n", encoding="utf-8")
        assert run(["eval", "--testset", str(p)]) == 1
        assert "error:" in capsys.readouterr().err


class TestBenchmark:
    def test_default_benchmark_passes(self, capsys):
        assert run(["benchmark"]) == 0
        out = capsys.readouterr().out
        assert "contextual" in out and "margin: +" in out

    def test_zero_margin_fails(self, tmp_path, capsys):
        # one dominant-sense sentence both systems answer correctly:
        # margin 0, and the command is for detecting a contextual edge
        p = tmp_path / "flat.tsv"
        p.write_text("adaraya\tආදරය\tsingle\tමගේ ආදරය ඔයා\n", encoding="utf-8")
        assert run(["benchmark", "--sentences", str(p)]) == 1
        assert "margin: +0.0000" in capsys.readouterr().out


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2


def test_missing_required_argument_exits_2():
    with pytest.raises(SystemExit) as err:
        main(["generate"])
    assert err.value.code == 2
