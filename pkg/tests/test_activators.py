from __future__ import annotations

import copy
import json
import random

import pytest

from sketchbind import (
    Scene,
    TransientModifier,
    apply_transient,
    attach_activator,
    attach_persistent,
    bounding_box,
    detach_activator,
    distribute_drag,
    draw_stroke,
    errors,
    get_object,
    ink_move,
    load_csv,
    map_dimension,
    move_object,
    object_height,
    push_move,
    replicate_drag,
    serialize_scene,
    sort_map,
    sort_toggle,
)
from sketchbind.activators import find_activator

TREE = [
    (40.0, 340.0), (55.0, 300.0), (45.0, 300.0), (60.0, 260.0), (50.0, 260.0),
    (70.0, 220.0), (90.0, 260.0), (80.0, 260.0), (95.0, 300.0), (85.0, 300.0),
    (100.0, 340.0),
]


def _mapped_mark(scene, object_id="tree"):
    oid = draw_stroke(scene, TREE, closed=True, object_id=object_id)
    attach_persistent(scene, oid, "label")
    attach_persistent(scene, oid, "height")
    map_dimension(scene, oid, "label", "trees", "name")
    map_dimension(scene, oid, "height", "trees", "avg.height")
    return oid


def _center_x(scene, object_id):
    (x0, _), (x1, _) = bounding_box(get_object(scene, object_id))
    return (x0 + x1) / 2


class TestAttach:
    def test_ink_attach_draws_nothing_yet(self, scene):
        pen = draw_stroke(scene, [(0, 0), (40, 0)])
        attach_activator(scene, pen, "ink")
        assert scene.scribbles == []
        assert find_activator(get_object(scene, pen), "ink") is not None

    def test_replicate_counts_the_remaining_records(self, scene):
        oid = _mapped_mark(scene)
        attach_activator(scene, oid, "replicate")
        state = find_activator(get_object(scene, oid), "replicate").state
        assert state.remaining == 2  # 3 records, the original covers one
        assert state.consumed == 0

    def test_replicate_needs_a_binding(self, scene):
        oid = draw_stroke(scene, TREE, closed=True)
        attach_persistent(scene, oid, "height")  # attached but never mapped
        with pytest.raises(errors.ReplicateWithoutBinding):
            attach_activator(scene, oid, "replicate")

    def test_distribute_span_too_small(self, scene):
        draw_stroke(scene, TREE, closed=True, object_id="only")
        stroke = draw_stroke(scene, [(0, 300), (200, 300)], object_id="ruler")
        with pytest.raises(errors.DistributeSpanTooSmall):
            attach_activator(scene, stroke, "distribute")

    def test_duplicate_activator(self, scene):
        pen = draw_stroke(scene, [(0, 0), (40, 0)])
        attach_activator(scene, pen, "ink")
        with pytest.raises(errors.DuplicateActivator):
            attach_activator(scene, pen, "ink")

    def test_distribute_handles_span_the_crossed_marks(self, scene):
        draw_stroke(scene, [(0, 0), (20, 0), (20, 30), (0, 30)], closed=True, object_id="a")
        draw_stroke(scene, [(50, 0), (70, 0), (70, 30), (50, 30)], closed=True, object_id="b")
        ruler = draw_stroke(scene, [(-5, 15), (80, 15)], object_id="ruler")
        attach_activator(scene, ruler, "distribute")
        state = find_activator(get_object(scene, ruler), "distribute").state
        assert state.axis == "x"
        assert state.span_objects == ["a", "b"]
        assert state.left_handle == (0.0, 15.0)
        assert state.right_handle == (70.0, 15.0)


class TestDetach:
    def test_detached_pen_stops_drawing(self, scene):
        pen = draw_stroke(scene, [(0, 0), (40, 0)])
        attach_activator(scene, pen, "ink")
        ink_move(scene, pen, [(10, 10), (20, 20)])
        old = serialize_scene(scene)
        detach_activator(scene, pen, "ink")
        move_object(scene, pen, (5, 5))
        assert len(scene.scribbles) == 1
        # The old scribble is byte-identical in the dump.
        before = json.loads(old)["scribbles"]
        after = json.loads(serialize_scene(scene))["scribbles"]
        assert before == after

    def test_detaching_push_keeps_ink_working(self, scene):
        pen = draw_stroke(scene, [(0, 0), (40, 0)])
        attach_activator(scene, pen, "ink")
        attach_activator(scene, pen, "push")
        target = draw_stroke(scene, [(60, -5), (80, -5), (80, 5), (60, 5)], closed=True)
        before_target = list(get_object(scene, target).geometry.points)
        detach_activator(scene, pen, "push")
        move_object(scene, pen, (30, 0))
        assert len(scene.scribbles) == 1
        assert get_object(scene, target).geometry.points == before_target

    def test_detach_absent_kind(self, scene):
        pen = draw_stroke(scene, [(0, 0), (40, 0)])
        with pytest.raises(errors.NoSuchActivator):
            detach_activator(scene, pen, "ink")

    def test_detach_changes_only_the_activator_list(self, scene):
        oid = _mapped_mark(scene)
        attach_activator(scene, oid, "replicate")
        replicate_drag(scene, oid, 200.0)
        before = json.loads(serialize_scene(scene))
        detach_activator(scene, oid, "replicate")
        after = json.loads(serialize_scene(scene))
        for tree in (before, after):
            target = next(o for o in tree["objects"] if o["id"] == oid)
            target.pop("activators")
        assert before == after


class TestInk:
    def test_scribble_traces_the_path_with_pen_style(self, scene):
        pen = draw_stroke(scene, [(0, 0), (40, 0)], stroke_width=5.0)
        attach_activator(scene, pen, "ink")
        path = [(float(i * 7), float(i * 3)) for i in range(10)]
        ink_move(scene, pen, path)
        assert len(scene.scribbles) == 1
        scribble = scene.scribbles[0]
        assert scribble.points == path
        assert scribble.color == "#000000"
        assert scribble.width == 5.0
        # The pen itself ends centered on the path's last point.
        from sketchbind.scene import centroid

        assert centroid(get_object(scene, pen)) == pytest.approx(path[-1])

    def test_recoloring_affects_only_new_scribbles(self, scene):
        pen = draw_stroke(scene, [(0, 0), (40, 0)])
        attach_activator(scene, pen, "ink")
        ink_move(scene, pen, [(10, 10), (20, 10)])
        apply_transient(scene, pen, TransientModifier("strokecolor", "#ffa500"))
        ink_move(scene, pen, [(30, 10), (40, 10)])
        assert [s.color for s in scene.scribbles] == ["#000000", "#ffa500"]

    def test_single_point_path_leaves_a_dot(self, scene):
        pen = draw_stroke(scene, [(0, 0), (40, 0)])
        attach_activator(scene, pen, "ink")
        ink_move(scene, pen, [(100, 100)])
        assert scene.scribbles[0].points == [(100.0, 100.0)]

    def test_ink_not_attached(self, scene):
        pen = draw_stroke(scene, [(0, 0), (40, 0)])
        with pytest.raises(errors.InkNotAttached):
            ink_move(scene, pen, [(1, 1)])


def _oracle_push_distance(tool_box, delta, obj_box):
    """Brute-force interval arithmetic: smallest t (along delta's direction)
    at which the object's box stops overlapping the tool's swept box."""
    import math

    (tx0, ty0), (tx1, ty1) = tool_box
    dx, dy = delta
    swept = (
        min(tx0, tx0 + dx), min(ty0, ty0 + dy),
        max(tx1, tx1 + dx), max(ty1, ty1 + dy),
    )
    length = math.hypot(dx, dy)
    ux, uy = dx / length, dy / length

    def overlaps(t):
        (ax0, ay0), (ax1, ay1) = obj_box
        ax0, ay0, ax1, ay1 = ax0 + ux * t, ay0 + uy * t, ax1 + ux * t, ay1 + uy * t
        sx0, sy0, sx1, sy1 = swept
        return ax0 < sx1 and sx0 < ax1 and ay0 < sy1 and sy0 < ay1

    if not overlaps(0.0):
        return 0.0
    lo, hi = 0.0, 4.0 * (length + (tx1 - tx0) + (ty1 - ty0) + 1000.0)
    for _ in range(200):  # bisect to double precision
        mid = (lo + hi) / 2
        if overlaps(mid):
            lo = mid
        else:
            hi = mid
    return hi


class TestPush:
    def test_swept_square_is_displaced_by_the_minimal_separation(self, scene):
        tool = draw_stroke(scene, [(0, 0), (20, 0), (20, 20), (0, 20)], closed=True)
        square = draw_stroke(scene, [(50, 5), (60, 5), (60, 15), (50, 15)], closed=True)
        attach_activator(scene, tool, "push")
        tool_box = bounding_box(get_object(scene, tool))
        square_box = bounding_box(get_object(scene, square))
        delta = (45.0, 0.0)
        expected_t = _oracle_push_distance(tool_box, delta, square_box)
        push_move(scene, tool, delta)
        (x0, _), _ = bounding_box(get_object(scene, square))
        assert x0 == pytest.approx(50.0 + expected_t, abs=1e-6)
        # It ends exactly at the swept box's leading edge.
        assert x0 == pytest.approx(65.0, abs=1e-9)

    def test_diagonal_push_matches_the_oracle(self, scene):
        tool = draw_stroke(scene, [(0, 0), (10, 0), (10, 10), (0, 10)], closed=True)
        box = draw_stroke(scene, [(18, 22), (30, 22), (30, 34), (18, 34)], closed=True)
        attach_activator(scene, tool, "push")
        delta = (24.0, 30.0)
        expected_t = _oracle_push_distance(
            bounding_box(get_object(scene, tool)), delta, bounding_box(get_object(scene, box))
        )
        before = bounding_box(get_object(scene, box))
        push_move(scene, tool, delta)
        after = bounding_box(get_object(scene, box))
        import math

        ux, uy = delta[0] / math.hypot(*delta), delta[1] / math.hypot(*delta)
        assert after[0][0] == pytest.approx(before[0][0] + ux * expected_t, abs=1e-6)
        assert after[0][1] == pytest.approx(before[0][1] + uy * expected_t, abs=1e-6)

    def test_zero_delta_moves_nothing(self, scene):
        tool = draw_stroke(scene, [(0, 0), (20, 0), (20, 20), (0, 20)], closed=True)
        draw_stroke(scene, [(5, 5), (15, 5), (15, 15), (5, 15)], closed=True)
        attach_activator(scene, tool, "push")
        before = serialize_scene(scene)
        push_move(scene, tool, (0, 0))
        assert serialize_scene(scene) == before

    def test_non_overlapping_object_is_unchanged(self, scene):
        tool = draw_stroke(scene, [(0, 0), (20, 0), (20, 20), (0, 20)], closed=True)
        far = draw_stroke(scene, [(500, 500), (510, 500), (510, 510), (500, 510)], closed=True)
        attach_activator(scene, tool, "push")
        before = list(get_object(scene, far).geometry.points)
        push_move(scene, tool, (30, 0))
        assert get_object(scene, far).geometry.points == before

    def test_push_not_attached(self, scene):
        tool = draw_stroke(scene, [(0, 0), (20, 0)])
        with pytest.raises(errors.PushNotAttached):
            push_move(scene, tool, (1, 0))

    def test_pushes_do_not_cascade(self, scene):
        tool = draw_stroke(scene, [(0, 0), (10, 0), (10, 10), (0, 10)], closed=True)
        near = draw_stroke(scene, [(12, 0), (22, 0), (22, 10), (12, 10)], closed=True)
        far = draw_stroke(scene, [(40, 0), (50, 0), (50, 10), (40, 10)], closed=True)
        attach_activator(scene, tool, "push")
        push_move(scene, tool, (5.0, 0.0))
        # Swept box reaches x=15: `near` exits to 15, `far` never overlapped.
        assert bounding_box(get_object(scene, near))[0][0] == pytest.approx(15.0, abs=1e-9)
        assert bounding_box(get_object(scene, far))[0][0] == 40.0


class TestReplicate:
    def test_one_full_step_spawns_one_replica(self, scene):
        oid = _mapped_mark(scene)
        attach_activator(scene, oid, "replicate")
        replicate_drag(scene, oid, 70.0)  # width 60 + 10 gap
        state = find_activator(get_object(scene, oid), "replicate").state
        assert state.consumed == 1 and state.remaining == 1
        replica = get_object(scene, f"{oid}~1")
        assert replica.record_index == 1
        assert replica.label_text == "Sugar Pine"

    def test_long_drag_stops_at_the_dataset_end(self, scene):
        oid = _mapped_mark(scene)
        attach_activator(scene, oid, "replicate")
        replicate_drag(scene, oid, 700.0)  # ten steps' worth
        assert [o.id for o in scene.objects] == [oid, f"{oid}~1", f"{oid}~2"]
        state = find_activator(get_object(scene, oid), "replicate").state
        assert state.remaining == 0
        before = serialize_scene(scene)
        replicate_drag(scene, oid, 500.0)  # disabled handle: a no-op, not an error
        assert serialize_scene(scene) == before

    def test_partial_drags_accumulate(self, scene):
        oid = _mapped_mark(scene)
        attach_activator(scene, oid, "replicate")
        replicate_drag(scene, oid, 40.0)
        assert len(scene.objects) == 1
        replicate_drag(scene, oid, 40.0)
        assert len(scene.objects) == 2

    def test_zero_drag_spawns_nothing(self, scene):
        oid = _mapped_mark(scene)
        attach_activator(scene, oid, "replicate")
        replicate_drag(scene, oid, 0.0)
        assert len(scene.objects) == 1

    def test_negative_drag(self, scene):
        oid = _mapped_mark(scene)
        attach_activator(scene, oid, "replicate")
        with pytest.raises(errors.NegativeDrag):
            replicate_drag(scene, oid, -1.0)

    def test_not_attached(self, scene):
        oid = _mapped_mark(scene)
        with pytest.raises(errors.ReplicateNotAttached):
            replicate_drag(scene, oid, 10.0)

    def test_replicas_sit_one_gap_apart_on_a_shared_baseline(self, scene):
        oid = _mapped_mark(scene)
        attach_activator(scene, oid, "replicate")
        replicate_drag(scene, oid, 700.0)
        boxes = [bounding_box(get_object(scene, i)) for i in (oid, f"{oid}~1", f"{oid}~2")]
        for left, right in zip(boxes, boxes[1:]):
            assert right[0][0] == pytest.approx(left[1][0] + 10.0, abs=1e-9)
        assert {round(b[1][1], 9) for b in boxes} == {340.0}

    def test_family_heights_share_one_scale(self, scene):
        oid = _mapped_mark(scene)
        attach_activator(scene, oid, "replicate")
        replicate_drag(scene, oid, 700.0)
        values = {"tree": 478.0, "tree~1": 220.0, "tree~2": 310.0}
        ratios = {
            object_height(get_object(scene, i)) / v for i, v in values.items()
        }
        assert max(ratios) - min(ratios) < 1e-9

    def test_conservation_under_random_drag_sequences(self, scene):
        rng = random.Random(7)
        for records in range(1, 11):
            s = Scene()
            rows = "".join(f"r{i},{(i * 37) % 19 + 1}\n" for i in range(records))
            s.datasets["d"] = load_csv(f"name,size\n{rows}", "d")
            oid = draw_stroke(s, TREE, closed=True, object_id="m")
            attach_persistent(s, oid, "label")
            map_dimension(s, oid, "label", "d", "name")
            attach_activator(s, oid, "replicate")
            for _ in range(8):
                replicate_drag(s, oid, rng.uniform(0, 300))
                state = find_activator(get_object(s, oid), "replicate").state
                assert state.consumed + state.remaining == records - 1
                assert len(s.objects) == 1 + state.consumed


def _distribute_fixture(scene):
    for i, oid in enumerate(("a", "b", "c")):
        x = 40.0 * i
        draw_stroke(
            scene,
            [(x, 0.0), (x + 20.0, 0.0), (x + 20.0, 30.0), (x, 30.0)],
            closed=True,
            object_id=oid,
        )
    ruler = draw_stroke(scene, [(-10.0, 15.0), (120.0, 15.0)], object_id="ruler")
    attach_activator(scene, ruler, "distribute")
    return ruler


class TestDistribute:
    def test_centers_land_exactly_on_the_closed_form(self, scene):
        ruler = _distribute_fixture(scene)
        distribute_drag(scene, ruler, "left", 0.0)
        distribute_drag(scene, ruler, "right", 200.0)
        assert [_center_x(scene, o) for o in ("a", "b", "c")] == [
            pytest.approx(0.0), pytest.approx(100.0), pytest.approx(200.0)
        ]

    def test_second_drag_recomputes_against_the_formula(self, scene):
        ruler = _distribute_fixture(scene)
        distribute_drag(scene, ruler, "left", 0.0)
        distribute_drag(scene, ruler, "right", 200.0)
        distribute_drag(scene, ruler, "right", 400.0)
        # Independent recomputation of center_i = L + i * (R - L) / (n - 1).
        expected = [0.0 + i * (400.0 - 0.0) / 2 for i in range(3)]
        got = [_center_x(scene, o) for o in ("a", "b", "c")]
        assert got == [pytest.approx(e, abs=1e-9) for e in expected]

    def test_gaps_stay_even_after_any_drag(self, scene):
        ruler = _distribute_fixture(scene)
        rng = random.Random(3)
        left, right = -10.0, 130.0
        for _ in range(20):
            if rng.random() < 0.5:
                left = rng.uniform(-200, right - 1)
                distribute_drag(scene, ruler, "left", left)
            else:
                right = rng.uniform(left + 1, 500)
                distribute_drag(scene, ruler, "right", right)
            centers = [_center_x(scene, o) for o in ("a", "b", "c")]
            assert centers[1] - centers[0] == pytest.approx(centers[2] - centers[1], abs=1e-6)

    def test_collapsed_span(self, scene):
        ruler = _distribute_fixture(scene)
        distribute_drag(scene, ruler, "right", 200.0)
        with pytest.raises(errors.CollapsedSpan):
            distribute_drag(scene, ruler, "left", 200.0)
        with pytest.raises(errors.CollapsedSpan):
            distribute_drag(scene, ruler, "left", 350.0)

    def test_not_attached(self, scene):
        oid = draw_stroke(scene, [(0, 0), (10, 0)])
        with pytest.raises(errors.DistributeNotAttached):
            distribute_drag(scene, oid, "left", 0.0)

    def test_order_is_preserved(self, scene):
        ruler = _distribute_fixture(scene)
        distribute_drag(scene, ruler, "right", 500.0)
        centers = {o: _center_x(scene, o) for o in ("a", "b", "c")}
        assert centers["a"] < centers["b"] < centers["c"]


def _sorted_chart(scene):
    oid = _mapped_mark(scene)
    attach_activator(scene, oid, "replicate")
    replicate_drag(scene, oid, 700.0)
    ruler = draw_stroke(scene, [(20.0, 320.0), (400.0, 322.0)], object_id="ruler")
    attach_activator(scene, ruler, "distribute")
    distribute_drag(scene, ruler, "right", 420.0)
    attach_activator(scene, ruler, "sort")
    return oid, ruler


def _left_to_right_records(scene, ids):
    ordered = sorted(ids, key=lambda i: _center_x(scene, i))
    return [get_object(scene, i).record_index for i in ordered]


class TestSort:
    def test_heights_sort_ascending(self, scene):
        _, ruler = _sorted_chart(scene)
        sort_map(scene, ruler, "trees", "avg.height")
        # Values by record: [478, 220, 310]; oracle: stable sort of indices.
        values = [478.0, 220.0, 310.0]
        oracle = sorted(range(3), key=lambda r: (values[r], r))
        assert _left_to_right_records(scene, ("tree", "tree~1", "tree~2")) == oracle

    def test_sorting_a_sorted_scene_changes_nothing(self, scene):
        _, ruler = _sorted_chart(scene)
        sort_map(scene, ruler, "trees", "avg.height")
        once = serialize_scene(scene)
        sort_map(scene, ruler, "trees", "avg.height")
        assert serialize_scene(scene) == once

    def test_categorical_sort_is_lexicographic(self, scene):
        _, ruler = _sorted_chart(scene)
        sort_map(scene, ruler, "trees", "name")
        names = ["Ponderosa Pine", "Sugar Pine", "Douglas Fir"]
        oracle = sorted(range(3), key=lambda r: (names[r], r))
        assert _left_to_right_records(scene, ("tree", "tree~1", "tree~2")) == oracle

    def test_toggle_reverses_and_is_an_involution(self, scene):
        _, ruler = _sorted_chart(scene)
        sort_map(scene, ruler, "trees", "avg.height")
        ascending = serialize_scene(scene)
        sort_toggle(scene, ruler)
        values = [478.0, 220.0, 310.0]
        by_record = sorted(range(3), key=lambda r: r)
        descending = sorted(by_record, key=lambda r: values[r], reverse=True)
        assert _left_to_right_records(scene, ("tree", "tree~1", "tree~2")) == descending
        sort_toggle(scene, ruler)
        assert serialize_scene(scene) == ascending

    def test_toggle_before_binding(self, scene):
        _, ruler = _sorted_chart(scene)
        with pytest.raises(errors.SortNotBound):
            sort_toggle(scene, ruler)

    def test_sort_without_distribute_computes_its_own_span(self, scene):
        oid = _mapped_mark(scene)
        attach_activator(scene, oid, "replicate")
        replicate_drag(scene, oid, 700.0)
        ruler = draw_stroke(scene, [(20.0, 320.0), (400.0, 322.0)], object_id="lone")
        attach_activator(scene, ruler, "sort")
        sort_map(scene, ruler, "trees", "avg.height")
        assert _left_to_right_records(scene, ("tree", "tree~1", "tree~2")) == [1, 2, 0]

    def test_unmapped_mark_in_the_span(self, scene):
        oid = _mapped_mark(scene)
        attach_activator(scene, oid, "replicate")
        replicate_drag(scene, oid, 700.0)
        draw_stroke(
            scene,
            [(250.0, 300.0), (270.0, 300.0), (270.0, 340.0), (250.0, 340.0)],
            closed=True,
            object_id="stray",
        )
        ruler = draw_stroke(scene, [(20.0, 320.0), (400.0, 322.0)], object_id="ruler")
        attach_activator(scene, ruler, "sort")
        with pytest.raises(errors.UnmappedMark):
            sort_map(scene, ruler, "trees", "avg.height")

    def test_sort_not_attached(self, scene):
        oid = draw_stroke(scene, [(0, 0), (10, 0)])
        with pytest.raises(errors.SortNotAttached):
            sort_map(scene, oid, "trees", "avg.height")
        with pytest.raises(errors.SortNotAttached):
            sort_toggle(scene, oid)

    def test_slot_positions_are_reused_not_invented(self, scene):
        _, ruler = _sorted_chart(scene)
        slots_before = sorted(_center_x(scene, o) for o in ("tree", "tree~1", "tree~2"))
        sort_map(scene, ruler, "trees", "avg.height")
        slots_after = sorted(_center_x(scene, o) for o in ("tree", "tree~1", "tree~2"))
        assert slots_after == [pytest.approx(s, abs=1e-9) for s in slots_before]


class TestRemovalSafety:
    def test_every_activator_detach_touches_one_list_only(self, scene):
        oid = _mapped_mark(scene)
        attach_activator(scene, oid, "replicate")
        replicate_drag(scene, oid, 700.0)
        ruler = draw_stroke(scene, [(20.0, 320.0), (400.0, 322.0)], object_id="ruler")
        attach_activator(scene, ruler, "distribute")
        attach_activator(scene, ruler, "sort")
        sort_map(scene, ruler, "trees", "avg.height")
        pen = draw_stroke(scene, [(500, 20), (540, 20)], object_id="pen")
        attach_activator(scene, pen, "ink")
        attach_activator(scene, pen, "push")
        ink_move(scene, pen, [(520, 60), (560, 80)])

        pairs = [
            (o.id, a.kind) for o in scene.objects for a in o.activators
        ]
        assert pairs  # fixture sanity
        for target_id, kind in pairs:
            trial = copy.deepcopy(scene)
            before = json.loads(serialize_scene(trial))
            detach_activator(trial, target_id, kind)
            after = json.loads(serialize_scene(trial))
            for tree in (before, after):
                entry = next(o for o in tree["objects"] if o["id"] == target_id)
                entry.pop("activators")
            assert before == after, (target_id, kind)
