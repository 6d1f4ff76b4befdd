import pytest

from pianocat.confluence import confluence_report, enumerate_composable_words
from pianocat.dissections import ChordArc, DissectionSet, dissection_from_generator
from pianocat.endo import piano_of_generator
from pianocat.generators import enumerate_limit_generators, fan_summands
from pianocat.quivers import (
    GentleQuiver,
    Arrow,
    PianoQuiver,
    QuiverError,
    Shape,
    canonical_word,
    degree_component_structure,
    gentle_from_dissection,
    graded_dim,
    is_locally_gentle,
    keyboard_from_extended,
    normal_form,
    piano_from_extended,
    quiver_to_dot,
    zero_degree_pairs,
)

# The five-green-point worked example: red arcs 1,3,5,8 and binding arcs
# 2,4,6,7,9 on a ten-position disc.
EXAMPLE_CHORDS = {
    1: ChordArc(0, 4),
    2: ChordArc(0, 1),
    3: ChordArc(0, 8),
    4: ChordArc(3, 4),
    5: ChordArc(2, 4),
    6: ChordArc(5, 4),
    7: ChordArc(9, 8),
    8: ChordArc(6, 8),
    9: ChordArc(6, 7),
}


def example_dissection() -> DissectionSet:
    return DissectionSet(
        5,
        tuple(EXAMPLE_CHORDS[k] for k in (1, 3, 5, 8)),
        tuple(EXAMPLE_CHORDS[k] for k in (2, 4, 6, 7, 9)),
    )


def example_keyboard():
    order = [EXAMPLE_CHORDS[k] for k in range(1, 10)]
    return keyboard_from_extended(example_dissection(), vertex_order=order)


def test_example_keyboard_quiver():
    kb = example_keyboard()
    arrows = sorted((e.src + 1, e.tgt + 1) for e in kb.gentle.arrows)
    assert arrows == sorted(
        [(2, 1), (6, 1), (1, 5), (1, 3), (5, 4), (3, 8), (9, 8), (7, 3)]
    )
    relations = sorted(
        (kb.gentle.arrows[a].src + 1, kb.gentle.arrows[a].tgt + 1, kb.gentle.arrows[b].tgt + 1)
        for a, b in kb.gentle.relations
    )
    assert relations == [(1, 3, 8), (2, 1, 5), (6, 1, 3)]
    assert sorted(v + 1 for v in kb.sharp) == [2, 4, 6, 7, 9]
    assert is_locally_gentle(kb.gentle)


def test_example_generator_and_dissection_give_the_same_keyboard():
    # The arc preimage of the worked dissection is a limit generator whose
    # keyboard quiver, built through the bijection, coincides arrow for
    # arrow with the one built from the chords directly.
    from pianocat.dissections import chord_to_arc, dissection_from_generator
    from pianocat.endo import verify_path_algebra_iso
    from pianocat.generators import is_limit_generator
    from pianocat.geometry import arc_set

    order = [EXAMPLE_CHORDS[k] for k in range(1, 10)]
    arcs = [chord_to_arc(c, 5) for c in order]
    assert is_limit_generator(arc_set(5, arcs))
    assert dissection_from_generator(arcs, 5) == example_dissection()
    direct = keyboard_from_extended(example_dissection(), vertex_order=order)
    through_arcs = keyboard_from_extended(
        dissection_from_generator(arcs, 5), vertex_order=order
    )
    assert direct.gentle.arrows == through_arcs.gentle.arrows
    assert direct.gentle.relations == through_arcs.gentle.relations
    assert direct.sharp == through_arcs.sharp
    assert verify_path_algebra_iso(arcs, 5, window=3).passed


def test_single_chord_dissection_quiver():
    q = gentle_from_dissection(DissectionSet(2, (ChordArc(0, 2),), ()))
    assert q.num_vertices == 1 and not q.arrows
    assert is_locally_gentle(q)


def test_standard_subquiver_is_tree():
    for n in (2, 3):
        for g in enumerate_limit_generators(n):
            kb = keyboard_from_extended(dissection_from_generator(list(g), n))
            standard = [v for v in range(kb.num_vertices) if v not in kb.sharp]
            assert len(standard) == n - 1
            edges = [
                e for e in kb.gentle.arrows if e.src not in kb.sharp and e.tgt not in kb.sharp
            ]
            assert len(edges) <= max(len(standard) - 1, 0) or len(standard) <= 1
            # No arrow joins two sharp vertices.
            for e in kb.gentle.arrows:
                assert not (e.src in kb.sharp and e.tgt in kb.sharp)


def test_is_locally_gentle_negatives():
    # Three arrows out of one vertex.
    q = GentleQuiver(
        4,
        tuple(range(4)),
        (Arrow(0, 1, 0), Arrow(0, 2, 1), Arrow(0, 3, 2)),
        frozenset(),
    )
    assert not is_locally_gentle(q)
    # Two relations continuing the same arrow.
    q = GentleQuiver(
        4,
        tuple(range(4)),
        (Arrow(0, 1, 0), Arrow(1, 2, 1), Arrow(1, 3, 2)),
        frozenset({(0, 1), (0, 2)}),
    )
    assert not is_locally_gentle(q)
    # Disconnected quiver.
    q = GentleQuiver(2, (0, 1), (), frozenset())
    assert not is_locally_gentle(q)


def test_fan_piano_quiver_shape():
    for n in (1, 2, 3):
        p = piano_of_generator(fan_summands(n))
        assert p.num_vertices == 2 * n - 1
        assert sorted(p.sharp) == list(range(0, 2 * n - 1, 2))
        assert [(e.src, e.tgt) for e in p.arrows] == [
            (i, i + 1) for i in range(2 * n - 2)
        ]
        assert not p.relations


def test_normal_form_loop_cancellation():
    p = piano_of_generator(fan_summands(2))
    nf = normal_form(p, (("a", 1), ("b", 1)))
    assert not nf.is_zero and nf.degree == 0 and nf.word == ()
    nf = normal_form(p, (("b", 1), ("a", 1), ("a", 1)))
    assert nf.degree == -1 and nf.shape == Shape.DELTA_ALPHA


def test_normal_form_zero_on_relation():
    kb = example_keyboard()
    p = piano_from_extended(example_dissection(), vertex_order=[EXAMPLE_CHORDS[k] for k in range(1, 10)])
    (rel,) = [r for r in p.relations if p.arrows[r[0]].src == 1]  # (2,1,5)
    word = (("d", rel[0]), ("d", rel[1]))
    assert normal_form(p, word).is_zero
    # Loops between the dead pair do not rescue it.
    word = (("d", rel[0]), ("a", p.arrows[rel[0]].tgt), ("d", rel[1]))
    assert normal_form(p, word).is_zero


def test_normal_form_beta_parks_before_sharp_target():
    p = piano_of_generator(fan_summands(2))
    # Vertex 1 is the only non-sharp one; arrow 1 -> 2 enters a sharp vertex.
    word = (("b", 1), ("d", 1))
    nf = normal_form(p, word)
    assert nf.shape == Shape.DELTA_BETA_DELTA
    assert nf.degree == 1
    # With the inverse loop appended the pair cancels across the arrow.
    nf = normal_form(p, (("b", 1), ("d", 1), ("a", 2)))
    assert nf.degree == 0 and nf.shape == Shape.DELTA_ALPHA and len(nf.word) == 1


def test_normal_form_pushes_beta_through_sharp_runs():
    p = piano_of_generator(fan_summands(3))
    # beta at 1, then arrows 1->2->3 (2 sharp, 3 non-sharp).
    word = (("b", 1), ("d", 1), ("d", 2))
    nf = normal_form(p, word)
    assert nf.shape == Shape.DELTA_BETA
    assert nf.word == (("d", 1), ("d", 2), ("b", 3))


def test_canonical_words_match_graded_dim():
    p = piano_of_generator(fan_summands(3))
    for a in range(5):
        for b in range(5):
            for m in range(-4, 5):
                w = canonical_word(p, a, b, m)
                if graded_dim(p, a, b, m) == 0:
                    assert w is None
                else:
                    if w:
                        nf = normal_form(p, w)
                        assert not nf.is_zero
                        assert (nf.source, nf.target, nf.degree) == (a, b, m)


def test_graded_dim_rules():
    p = piano_of_generator(fan_summands(3))
    pairs = zero_degree_pairs(p)
    assert (0, 4) in pairs and (4, 0) not in pairs
    # Non-sharp diagonal in every degree, sharp only non-positive.
    for m in (-3, 0, 3):
        assert graded_dim(p, 1, 1, m) == 1
    assert graded_dim(p, 0, 0, 1) == 0
    assert graded_dim(p, 0, 0, -2) == 1
    # Off-diagonal dimensions are degree independent.
    for m in range(-5, 6):
        assert graded_dim(p, 0, 3, m) == graded_dim(p, 0, 3, 0)


def test_degree_component_structure_fan3():
    p = piano_of_generator(fan_summands(3))
    low = degree_component_structure(p, -2)
    high = degree_component_structure(p, 2)
    assert sum(map(sum, low)) == 15
    assert sum(map(sum, high)) == 12
    # Positive degrees: zero column at each sharp source, and the columns at
    # the other sharp vertices match the columns of their predecessors.
    assert [row[0] for row in high] == [0] * 5
    assert [row[2] for row in high] == [row[1] for row in high]


def test_degree_structure_matches_graded_dim():
    for n in (1, 2, 3):
        for g in enumerate_limit_generators(n):
            p = piano_of_generator(list(g), n)
            for i in (-2, 0, 1, 3):
                матrix = degree_component_structure(p, i)
                direct = [
                    [graded_dim(p, a, b, i) for b in range(p.num_vertices)]
                    for a in range(p.num_vertices)
                ]
                assert матrix == direct


def test_confluence_small_quivers():
    for n in (1, 2):
        for g in enumerate_limit_generators(n):
            p = piano_of_generator(list(g), n)
            ok, witness = confluence_report(p, max_length=6)
            assert ok, witness


def test_removed_commutation_breaks_normal_form_uniqueness():
    # Two words of the same class must share a terminal; dropping the
    # commutation runs leaves the loop stuck on the wrong side.
    p = piano_of_generator(fan_summands(3))
    w1 = (("b", 1), ("d", 1), ("d", 2))
    w2 = (("d", 1), ("d", 2), ("b", 3))
    assert normal_form(p, w1).word == normal_form(p, w2).word
    crippled = PianoQuiver(p.keyboard, ())
    assert normal_form(crippled, w1).word != normal_form(crippled, w2).word


def test_removed_relation_breaks_zero_detection():
    p = piano_from_extended(
        example_dissection(), vertex_order=[EXAMPLE_CHORDS[k] for k in range(1, 10)]
    )
    (rel,) = [r for r in p.relations if p.arrows[r[0]].src == 1]
    word = (("d", rel[0]), ("d", rel[1]))
    assert normal_form(p, word).is_zero
    from pianocat.quivers import GentleQuiver as GQ, KeyboardQuiver as KQ, piano_from_keyboard

    stripped_gentle = GQ(
        p.keyboard.gentle.num_vertices,
        p.keyboard.gentle.labels,
        p.keyboard.gentle.arrows,
        frozenset(),
    )
    crippled = piano_from_keyboard(KQ(stripped_gentle, p.keyboard.sharp))
    assert not normal_form(crippled, word).is_zero


def test_path_enumeration_oracle():
    p = piano_of_generator(fan_summands(2))
    found = {(v, v, 0) for v in range(p.num_vertices)}  # identity classes
    for w in enumerate_composable_words(p, 7):
        nf = normal_form(p, w)
        if not nf.is_zero:
            found.add((nf.source, nf.target, nf.degree))
    for a in range(p.num_vertices):
        for b in range(p.num_vertices):
            for m in range(-3, 4):
                path = () if a == b else (abs(b - a),)
                witness_length = (abs(b - a)) + abs(m) + 1
                if witness_length <= 7:
                    assert graded_dim(p, a, b, m) == int((a, b, m) in found), (a, b, m)


def test_dot_export_counts():
    kb = example_keyboard()
    dot = quiver_to_dot(kb)
    assert dot.count("style=solid") == 8
    assert dot.count("style=dotted") == 3
    assert dot.count("shape=circle") == 9


def test_word_validation():
    p = piano_of_generator(fan_summands(2))
    with pytest.raises(QuiverError):
        normal_form(p, (("b", 0),))  # no beta at a sharp vertex
    with pytest.raises(QuiverError):
        normal_form(p, (("d", 0), ("d", 0)))  # not composable
    with pytest.raises(QuiverError):
        normal_form(p, ())
