"""Weight splicing over shared subgraphs and amalgams."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cwkms.cwweights import MODE_STANDARD, MODE_TIGHT, Rank2Weight, solve_2dcw, verify_rank2
from cwkms.errors import BadEmbedding, IncompatibleAttachment, ModeError, NotFaithful
from cwkms.exact import scalar_to_float
from cwkms.fixtures import FIG_B_SPEC, fig_b_double_amalgam_spec
from cwkms.graphs import build_graph
from cwkms.solver import GraphWeight, verify_graph_weight
from cwkms.splicing import (
    GraphEmbedding,
    build_amalgam,
    glue_graphs,
    splice_cw_weights,
    splice_graph_weights,
)

from .conftest import compatible_extension_pair, identity_embedding, random_faithful_weight, random_graph


class TestGraphSplice:
    def test_shared_loop_hand_example(self):
        gamma = build_graph({"vertices": ["v"], "edges": []})
        loop = build_graph({"vertices": ["v"], "edges": [{"id": "e", "src": "v", "dst": "v"}]})
        emb = identity_embedding(gamma, loop)
        w = GraphWeight({"v": F(1)}, {"e": F(1)})
        res = splice_graph_weights(w, w, emb, emb)
        assert res.weight.g["v"] == 2
        assert res.weight.lam["1:e"] == F(1, 2)
        assert res.weight.lam["2:e"] == F(1, 2)
        rep = verify_graph_weight(res.glued.graph, res.weight, 0)
        assert rep.passed and rep.exact

    def test_shared_sink_vertex(self):
        gamma = build_graph({"vertices": ["w"], "edges": []})
        piece = build_graph({
            "vertices": ["w", "p"],
            "edges": [{"id": "e", "src": "p", "dst": "w"}],
        })
        emb = identity_embedding(gamma, piece)
        w1 = GraphWeight({"w": F(2), "p": F(3)}, {"e": F(3, 2)})
        w2 = GraphWeight({"w": F(5), "p": F(7)}, {"e": F(7, 5)})
        res = splice_graph_weights(w1, w2, emb, emb)
        assert res.weight.g["w"] == 7
        # lambda rescales by g_i(w) / (g_1+g_2)(w)
        assert res.weight.lam["1:e"] == F(3, 2) * F(2, 7)
        assert res.weight.lam["2:e"] == F(7, 5) * F(5, 7)
        assert verify_graph_weight(res.glued.graph, res.weight, 0).passed

    def test_g_unchanged_off_shared_part(self):
        rng = random.Random(17)
        gamma = random_graph(rng, n_max=3)
        (g1, e1), (g2, e2) = compatible_extension_pair(rng, gamma)
        w1 = random_faithful_weight(rng, g1)
        w2 = random_faithful_weight(rng, g2)
        res = splice_graph_weights(w1, w2, e1, e2)
        extras = [v for v in g1.vertices if v not in gamma.vertices]
        for v in extras:
            assert res.weight.g[f"1:{v}"] == w1.g[v]

    @given(seed=st.integers(0, 10**9))
    @settings(max_examples=50, deadline=None)
    def test_splice_closure_exact(self, seed):
        rng = random.Random(seed)
        gamma = random_graph(rng, n_max=3)
        (g1, e1), (g2, e2) = compatible_extension_pair(rng, gamma)
        w1 = random_faithful_weight(rng, g1)
        w2 = random_faithful_weight(rng, g2)
        assert verify_graph_weight(g1, w1, 0).passed
        assert verify_graph_weight(g2, w2, 0).passed
        res = splice_graph_weights(w1, w2, e1, e2)
        rep = verify_graph_weight(res.glued.graph, res.weight, 0)
        assert rep.passed and rep.exact and rep.max_residual == 0.0
        # faithfulness is preserved: strictly positive in, strictly positive out
        assert res.weight.strictly_positive_on(res.glued.graph)

    def test_symmetry_up_to_relabeling(self):
        rng = random.Random(23)
        gamma = random_graph(rng, n_max=3)
        (g1, e1), (g2, e2) = compatible_extension_pair(rng, gamma)
        w1 = random_faithful_weight(rng, g1)
        w2 = random_faithful_weight(rng, g2)
        r12 = splice_graph_weights(w1, w2, e1, e2)
        r21 = splice_graph_weights(w2, w1, e2, e1)

        def swap(name):
            if name.startswith("1:"):
                return "2:" + name[2:]
            if name.startswith("2:"):
                return "1:" + name[2:]
            return name

        assert {swap(k): v for k, v in r12.weight.g.items()} == r21.weight.g
        assert {swap(k): v for k, v in r12.weight.lam.items()} == r21.weight.lam

    def test_not_faithful_rejected(self):
        gamma = build_graph({"vertices": ["v"], "edges": []})
        loop = build_graph({"vertices": ["v"], "edges": [{"id": "e", "src": "v", "dst": "v"}]})
        emb = identity_embedding(gamma, loop)
        bad = GraphWeight({"v": F(0)}, {"e": F(1)})
        with pytest.raises(NotFaithful):
            splice_graph_weights(bad, bad, emb, emb)

    def test_bad_embedding(self):
        gamma = build_graph({"vertices": ["v", "w"], "edges": []})
        target = build_graph({"vertices": ["v"], "edges": []})
        emb = GraphEmbedding(gamma, target, {"v": "v", "w": "v"}, {})
        with pytest.raises(BadEmbedding):
            emb.validate()
        emb2 = GraphEmbedding(gamma, target, {"v": "v"}, {})
        with pytest.raises(BadEmbedding):
            emb2.validate()

    def test_different_sources_rejected(self):
        g1 = build_graph({"vertices": ["v"], "edges": []})
        g2 = build_graph({"vertices": ["w"], "edges": []})
        t = build_graph({"vertices": ["v", "w"], "edges": []})
        with pytest.raises(BadEmbedding):
            glue_graphs(identity_embedding(g1, t), identity_embedding(g2, t))

    def test_mismatched_sink_structure_rejected(self):
        # v is a sink in the second piece only; the glued equation at v
        # could not absorb g2(v), so the splice must refuse
        gamma = build_graph({"vertices": ["v"], "edges": []})
        active = build_graph({"vertices": ["v"], "edges": [{"id": "e", "src": "v", "dst": "v"}]})
        passive = build_graph({"vertices": ["v"], "edges": []})
        w_active = GraphWeight({"v": F(1)}, {"e": F(1)})
        w_passive = GraphWeight({"v": F(1)}, {})
        with pytest.raises(BadEmbedding):
            splice_graph_weights(
                w_active,
                w_passive,
                identity_embedding(gamma, active),
                identity_embedding(gamma, passive),
            )


class TestAmalgam:
    def test_double_figb_counts(self):
        am = build_amalgam(fig_b_double_amalgam_spec())
        fd = am.foundation
        assert len(fd.skeleton.vertices) == 8
        assert len(fd.skeleton.edges) == 11
        assert len(fd.faces) == 4
        # shared edge and endpoints keep the residue ids
        assert fd.skeleton.has_edge("d")
        assert fd.skeleton.has_vertex("v") and fd.skeleton.has_vertex("u")

    def test_single_piece_identity(self, figb):
        am = build_amalgam({"pieces": {"p": FIG_B_SPEC}, "residues": {}, "attachments": []})
        assert am.foundation == figb

    def test_incompatible_attachment(self):
        spec = fig_b_double_amalgam_spec()
        spec["attachments"][0]["vertex_map"] = {"v": "v"}  # missing u
        with pytest.raises(IncompatibleAttachment):
            build_amalgam(spec)

    def test_unknown_piece(self):
        spec = fig_b_double_amalgam_spec()
        spec["attachments"][0]["piece"] = "nope"
        with pytest.raises(IncompatibleAttachment):
            build_amalgam(spec)


class TestCWSplice:
    def standard_weight(self, figb):
        return solve_2dcw(figb, MODE_STANDARD)[0].weight

    def test_double_figb_splice_exact(self, figb):
        am = build_amalgam(fig_b_double_amalgam_spec())
        w = self.standard_weight(figb)
        spliced = splice_cw_weights(am, {"p1": w, "p2": w})
        rep = verify_rank2(am.foundation, spliced)
        assert rep.passed and rep.faithful
        assert rep.max_residual == 0.0  # exact over the root's number field
        # coupling (checkrel): lambda = lambda_tilde * g(dst) holds exactly
        assert all(v == 0.0 for v in rep.coupling_residuals.values())

    def test_single_piece_splice_is_identity(self, figb):
        am = build_amalgam({"pieces": {"p": FIG_B_SPEC}, "residues": {}, "attachments": []})
        w = self.standard_weight(figb)
        spliced = splice_cw_weights(am, {"p": w})
        assert spliced.g == w.g
        assert spliced.lam == w.lam
        for f in figb.faces:
            for k in range(len(f.boundary)):
                assert spliced.eta_at(f.id, k) == w.eta_at(f.id, k)

    def test_tight_mode_rejected(self, figb):
        am = build_amalgam(fig_b_double_amalgam_spec())
        tight = solve_2dcw(figb, MODE_TIGHT)[0].weight
        with pytest.raises(ModeError):
            splice_cw_weights(am, {"p1": tight, "p2": tight})

    def test_unfaithful_rejected(self, figb):
        am = build_amalgam(fig_b_double_amalgam_spec())
        w = self.standard_weight(figb)
        broken = Rank2Weight(
            g=dict(w.g),
            lambda_tilde=dict(w.lambda_tilde),
            lam=dict(w.lam),
            eta=dict(w.eta),
            mode=MODE_STANDARD,
        )
        broken.g["x"] = broken.g["x"] * 2
        with pytest.raises(NotFaithful):
            splice_cw_weights(am, {"p1": broken, "p2": w})

    def test_three_pieces_fold(self, figb):
        spec = fig_b_double_amalgam_spec()
        spec["pieces"]["p3"] = dict(FIG_B_SPEC)
        spec["attachments"].append({
            "piece": "p3",
            "residue": "r",
            "vertex_map": {"v": "v", "u": "u"},
            "edge_map": {"d": "d"},
        })
        am = build_amalgam(spec)
        assert len(am.foundation.skeleton.vertices) == 11
        assert len(am.foundation.skeleton.edges) == 16
        w = self.standard_weight(figb)
        spliced = splice_cw_weights(am, {"p1": w, "p2": w, "p3": w})
        rep = verify_rank2(am.foundation, spliced)
        assert rep.passed and rep.max_residual == 0.0
        assert scalar_to_float(spliced.g["v"]) == pytest.approx(3 * scalar_to_float(w.g["v"]))

    def test_eta_instances_shape(self, figb):
        am = build_amalgam(fig_b_double_amalgam_spec())
        w = self.standard_weight(figb)
        spliced = splice_cw_weights(am, {"p1": w, "p2": w})
        # the face coefficient is halved exactly on instances feeding into
        # the shared edge d, and untouched elsewhere
        eta0 = scalar_to_float(w.eta["s1"])
        for (fid, pos), val in spliced.eta_instances.items():
            fval = scalar_to_float(val)
            face = next(f for f in am.foundation.faces if f.id == fid)
            nxt = face.boundary[(pos + 1) % len(face.boundary)]
            if nxt == "d":
                assert fval == pytest.approx(eta0 / 2)
            else:
                assert fval == pytest.approx(eta0)
