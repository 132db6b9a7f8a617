from __future__ import annotations

import hashlib

from tropid.figures import identity_growth_figure, witness_digraph_figure

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def _digest(path):
    return hashlib.sha256(path.read_bytes()).hexdigest()


def test_growth_figure_renders_png(tmp_path):
    p = tmp_path / "growth.png"
    lengths = identity_growth_figure(p, max_n=6)
    assert lengths == [2, 10, 26, 226, 530, 1066]
    assert p.read_bytes()[:8] == PNG_MAGIC


def test_growth_figure_is_byte_deterministic(tmp_path):
    p1, p2 = tmp_path / "a.png", tmp_path / "b.png"
    identity_growth_figure(p1, max_n=5)
    identity_growth_figure(p2, max_n=5)
    assert _digest(p1) == _digest(p2)


def test_witness_digraph_renders_all_edges(tmp_path):
    p = tmp_path / "digraph.png"
    edges = witness_digraph_figure(p, word="bab")
    assert edges == 9  # 4 diagonal a-loops, 2 corner b-loops, 3 b-steps
    assert p.read_bytes()[:8] == PNG_MAGIC


def test_witness_digraph_is_byte_deterministic(tmp_path):
    p1, p2 = tmp_path / "a.png", tmp_path / "b.png"
    witness_digraph_figure(p1, word="aa")
    witness_digraph_figure(p2, word="aa")
    assert _digest(p1) == _digest(p2)
