import dataclasses
import random

import pytest

from khcover import tables
from khcover.construct import braid_closure, pretzel_diagram
from khcover.diagram import parse_pd
from khcover.errors import Disconnected
from khcover.goeritz import goeritz_determinant, is_alternating
from khcover.khovanov import assemble, homology, kauffman_oracle
from khcover.quasialt import (
    QACertificate,
    Unknown,
    qa_certify,
    simplify,
    validate_certificate,
)

TREFOIL = "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]"
HOPF = "X[2,1,3,4];X[4,3,1,2]"
KINK = "X[1,2,2,1]"
KINK2 = "X[2,1,1,2]"
R2_UNLINK = "X[2,1,3,4];X[3,1,2,4]"
SWITCHED_TREFOIL = "X[1,4,2,5];X[3,6,4,1];X[2,6,3,5]"
# trefoil with a detached circle poked over one of its strands
POKED_SPLIT = "X[1,4,2,5];X[3,6,4,1];X[5,8,6,3];X[2,9,7,10];X[7,9,8,10]"


def leaves(cert: QACertificate) -> list[QACertificate]:
    if cert.is_leaf:
        return [cert]
    return [x for c in cert.children for x in leaves(c)]


def walk(cert: QACertificate):
    yield cert
    if not cert.is_leaf:
        for c in cert.children:
            yield from walk(c)


class TestSimplify:
    def test_kink_both_handedness(self):
        assert simplify(parse_pd(KINK)).to_code() == "O1"
        assert simplify(parse_pd(KINK2)).to_code() == "O1"

    def test_poke_pair_unlinks(self):
        s = simplify(parse_pd(R2_UNLINK))
        assert s.n_crossings == 0
        assert s.free_loops == 2

    def test_clasp_is_kept(self):
        # opposite-parity bigon: removing it would change the link
        d = parse_pd(HOPF)
        assert simplify(d).to_code() == d.to_code()

    def test_reduced_alternating_fixed(self):
        for name in tables.names():
            d = tables.load(name)
            if is_alternating(d):
                assert simplify(d).n_crossings == d.n_crossings, name

    def test_switched_trefoil_is_unknot(self):
        s = simplify(parse_pd(SWITCHED_TREFOIL))
        assert s.n_crossings == 0 and s.n_components == 1

    def test_one_plus_minus_pretzel_is_unknot(self):
        s = simplify(pretzel_diagram([1, 2, -1]))
        assert s.to_code() == "O1"

    def test_split_poke_removal(self):
        d = parse_pd(POKED_SPLIT)
        assert d.is_connected()
        s = simplify(d)
        assert s.n_crossings == 3
        assert s.free_loops == 1
        assert not s.is_connected()

    def test_never_adds_crossings(self):
        rng = random.Random(3)
        for _ in range(25):
            n = rng.randint(2, 4)
            word = [rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(1, 8))]
            d = braid_closure(word, n)
            assert simplify(d).n_crossings <= d.n_crossings

    def test_preserves_unoriented_invariants(self):
        # determinant and total homology rank do not depend on component
        # orientations, unlike the normalized state sum for links
        rng = random.Random(7)
        for _ in range(20):
            n = rng.randint(2, 4)
            word = [rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(2, 8))]
            d = braid_closure(word, n)
            s = simplify(d)
            if d.is_connected() and s.is_connected():
                assert goeritz_determinant(d) == goeritz_determinant(s)
            ra = sum(homology(assemble(d, reduced=False)).ranks.values())
            rb = sum(homology(assemble(s, reduced=False)).ranks.values())
            assert ra == rb

    def test_preserves_state_sum_on_knots(self):
        rng = random.Random(11)
        seen = 0
        while seen < 8:
            n = rng.randint(2, 4)
            word = [rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(2, 8))]
            d = braid_closure(word, n)
            if d.n_components != 1:
                continue
            seen += 1
            s = simplify(d)
            assert kauffman_oracle(d, reduced=False) == kauffman_oracle(s, reduced=False)

    def test_mark_carried_through(self):
        d = parse_pd(TREFOIL + ";mark=1")
        assert simplify(d).mark is not None


class TestCertificateType:
    def test_leaf_json(self):
        leaf = QACertificate("O1", 1)
        assert leaf.is_leaf
        assert leaf.to_json_dict() == {"code": "O1", "det": 1}

    def test_internal_json_nests(self):
        cert = qa_certify(parse_pd(HOPF))
        d = cert.to_json_dict()
        assert d["det"] == 2
        assert d["crossing"] == cert.crossing
        assert [c["det"] for c in d["children"]] == [1, 1]

    def test_render_tree(self):
        cert = qa_certify(parse_pd(TREFOIL))
        text = cert.render()
        lines = text.splitlines()
        assert "resolve crossing" in lines[0]
        assert text.count("unknot") == len(leaves(cert))
        assert all(line.startswith("  ") for line in lines[1:])


class TestQACertify:
    def test_unknot_leaf(self):
        cert = qa_certify(parse_pd("O1"))
        assert cert.is_leaf and cert.det == 1

    def test_kink_simplifies_to_leaf(self):
        cert = qa_certify(parse_pd(KINK))
        assert cert.is_leaf and cert.code == "O1"

    def test_hopf(self):
        cert = qa_certify(parse_pd(HOPF))
        assert cert.det == 2
        assert sorted(c.det for c in cert.children) == [1, 1]

    def test_trefoil_bottoms_out_at_unknots(self):
        cert = qa_certify(parse_pd(TREFOIL))
        assert cert.det == 3
        assert sorted(c.det for c in cert.children) == [1, 2]
        for leaf in leaves(cert):
            assert leaf.det == 1

    def test_additivity_at_every_internal_node(self):
        cert = qa_certify(tables.load("6_2"))
        for node in walk(cert):
            if not node.is_leaf:
                assert node.children[0].det + node.children[1].det == node.det
                assert node.children[0].det and node.children[1].det

    def test_alternating_corpus_within_power_budget(self):
        for name in tables.names():
            d = tables.load(name)
            if not is_alternating(d) or d.n_crossings == 0:
                continue
            cert = qa_certify(d, budget=2 ** d.n_crossings)
            assert isinstance(cert, QACertificate), name
            assert cert.det == goeritz_determinant(d), name

    def test_headline_mixed_pretzel(self):
        cert = qa_certify(tables.load("nine47"))
        assert isinstance(cert, QACertificate)
        assert cert.det == 29
        assert sorted(c.det for c in cert.children) == [5, 24]

    def test_torus_knot_is_unknown(self):
        r = qa_certify(tables.load("t35"))
        assert isinstance(r, Unknown)
        assert "no determinant-additive" in r.reason
        assert r.explored >= 1

    def test_budget_exhaustion_reported(self):
        r = qa_certify(parse_pd(TREFOIL), budget=1)
        assert isinstance(r, Unknown)
        assert "budget" in r.reason
        assert r.explored == 1

    def test_disconnected_input_rejected(self):
        with pytest.raises(Disconnected):
            qa_certify(parse_pd(TREFOIL + ";O1"))

    def test_certificates_validate(self):
        for code in (HOPF, TREFOIL):
            assert validate_certificate(qa_certify(parse_pd(code)))

    def test_validation_rejects_wrong_leaf(self):
        # a trefoil is not an unknot leaf no matter what the det field says
        assert not validate_certificate(QACertificate(TREFOIL, 1))

    def test_validation_rejects_tampered_det(self):
        cert = qa_certify(parse_pd(TREFOIL))
        bad = dataclasses.replace(cert, det=5)
        assert not validate_certificate(bad)

    def test_validation_rejects_wrong_child(self):
        cert = qa_certify(parse_pd(HOPF))
        bad = dataclasses.replace(
            cert, children=(cert.children[0], dataclasses.replace(cert.children[1], det=2))
        )
        assert not validate_certificate(bad)
