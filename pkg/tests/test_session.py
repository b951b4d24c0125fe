from __future__ import annotations

import itertools

import pytest

from conftest import SCENARIO_BELIEFS, SCENARIO_CENTER_BELIEF
from medialens.aggregate import SegmentationPoint, SentimentCategory
from medialens.errors import InputError, NotFoundError, StageError
from medialens.session import Session, SessionStore, Stage, Workflow


@pytest.fixture
def workflow(scenario_ann):
    counter = itertools.count()
    return Workflow(scenario_ann, clock=lambda: f"2024-01-01T00:00:{next(counter) % 60:02d}.{next(counter):06d}+00:00")


def drive_full_round(workflow, session, with_notes=True):
    workflow.start_round(session)
    workflow.choose_topic_outlet(session, "White_House", "Breitbart")
    rnd = session.rounds[-1]
    for topic, cat in SCENARIO_BELIEFS.items():
        workflow.assign(session, topic, SentimentCategory(cat))
    workflow.set_center(session, SentimentCategory(SCENARIO_CENTER_BELIEF))
    workflow.finalize_user_hive(session)
    workflow.reveal(session)
    workflow.select_conflict(session, "United_States")
    if with_notes:
        article_id = workflow.ann.snapshot.articles[0].id
        workflow.add_note(session, "plain note")
        workflow.add_note(session, "with ref", article_id, 0)
    workflow.complete_round(session)
    return rnd


class TestRounds:
    def test_fresh_session_first_round(self, workflow):
        session = workflow.new_session()
        rnd = workflow.start_round(session)
        assert rnd.index == 0
        assert rnd.stage is Stage.TOPIC_SELECTION

    def test_second_round_after_completion(self, workflow):
        session = workflow.new_session()
        drive_full_round(workflow, session)
        rnd = workflow.start_round(session)
        assert rnd.index == 1

    def test_start_with_open_round_rejected(self, workflow):
        session = workflow.new_session()
        workflow.start_round(session)
        with pytest.raises(StageError):
            workflow.start_round(session)


class TestChoose:
    def test_choose_advances_stage(self, workflow):
        session = workflow.new_session()
        workflow.start_round(session)
        rnd = workflow.choose_topic_outlet(session, "White_House", "Breitbart")
        assert rnd.stage is Stage.BELIEF_ELICITATION
        assert rnd.user_hive is not None
        assert 0 < len(rnd.user_hive.candidates) <= 20
        assert rnd.data_hive is None

    def test_below_threshold_rejected(self, workflow):
        session = workflow.new_session(threshold=1000)
        workflow.start_round(session)
        with pytest.raises(InputError):
            workflow.choose_topic_outlet(session, "White_House", "Breitbart")

    def test_unknown_outlet(self, workflow):
        session = workflow.new_session()
        workflow.start_round(session)
        with pytest.raises(NotFoundError):
            workflow.choose_topic_outlet(session, "White_House", "The Gazette")

    def test_zero_candidate_topic_surfaces_error(self, workflow):
        session = workflow.new_session()
        workflow.start_round(session)
        with pytest.raises(NotFoundError):
            workflow.choose_topic_outlet(session, "Canada", "CNN")

    def test_stage_violation(self, workflow):
        session = workflow.new_session()
        workflow.start_round(session)
        workflow.choose_topic_outlet(session, "White_House", "Breitbart")
        with pytest.raises(StageError):
            workflow.choose_topic_outlet(session, "White_House", "Breitbart")


class TestReveal:
    def test_reveal_requires_finalized_hive(self, workflow):
        session = workflow.new_session()
        workflow.start_round(session)
        workflow.choose_topic_outlet(session, "White_House", "Breitbart")
        with pytest.raises(StageError):
            workflow.reveal(session)
        # and the rejection is in the transition log
        assert any(t.op == "reveal" and not t.ok for t in session.transitions)

    def test_reveal_produces_conflicts(self, workflow):
        session = workflow.new_session()
        workflow.start_round(session)
        workflow.choose_topic_outlet(session, "White_House", "Breitbart")
        for topic, cat in SCENARIO_BELIEFS.items():
            workflow.assign(session, topic, SentimentCategory(cat))
        workflow.set_center(session, SentimentCategory(SCENARIO_CENTER_BELIEF))
        workflow.finalize_user_hive(session)
        rnd = workflow.reveal(session)
        assert rnd.data_hive is not None
        assert rnd.conflicts is not None
        assert rnd.conflicts.count == 4

    def test_double_reveal_rejected(self, workflow):
        session = workflow.new_session()
        workflow.start_round(session)
        workflow.choose_topic_outlet(session, "White_House", "Breitbart")
        for topic, cat in SCENARIO_BELIEFS.items():
            workflow.assign(session, topic, SentimentCategory(cat))
        workflow.finalize_user_hive(session)
        workflow.reveal(session)
        with pytest.raises(StageError):
            workflow.reveal(session)

    def test_user_hive_immutable_after_reveal(self, workflow):
        session = workflow.new_session()
        workflow.start_round(session)
        workflow.choose_topic_outlet(session, "White_House", "Breitbart")
        for topic, cat in SCENARIO_BELIEFS.items():
            workflow.assign(session, topic, SentimentCategory(cat))
        workflow.finalize_user_hive(session)
        workflow.reveal(session)
        with pytest.raises(StageError):
            workflow.assign(session, "Russia", SentimentCategory.POSITIVE)


class TestSelectAndNotes:
    def test_select_listed_conflict(self, workflow):
        session = workflow.new_session()
        drive_full_round(workflow, session, with_notes=False)
        assert session.rounds[0].selected_conflict == "United_States"
        assert session.rounds[0].stage is Stage.DONE

    def test_select_non_candidate_rejected(self, workflow):
        session = workflow.new_session()
        workflow.start_round(session)
        workflow.choose_topic_outlet(session, "White_House", "Breitbart")
        for topic, cat in SCENARIO_BELIEFS.items():
            workflow.assign(session, topic, SentimentCategory(cat))
        workflow.finalize_user_hive(session)
        workflow.reveal(session)
        with pytest.raises(NotFoundError):
            workflow.select_conflict(session, "Atlantis")

    def test_switch_topic_during_review(self, workflow):
        session = workflow.new_session()
        workflow.start_round(session)
        workflow.choose_topic_outlet(session, "White_House", "Breitbart")
        for topic, cat in SCENARIO_BELIEFS.items():
            workflow.assign(session, topic, SentimentCategory(cat))
        workflow.finalize_user_hive(session)
        workflow.reveal(session)
        workflow.select_conflict(session, "United_States")
        rnd = workflow.select_conflict(session, "Russia")  # non-conflict candidate
        assert rnd.selected_conflict == "Russia"
        assert rnd.stage is Stage.ARTICLE_REVIEW

    def test_note_requires_review_stage(self, workflow):
        session = workflow.new_session()
        workflow.start_round(session)
        with pytest.raises(StageError):
            workflow.add_note(session, "too early")

    def test_note_with_dangling_article(self, workflow):
        session = workflow.new_session()
        workflow.start_round(session)
        workflow.choose_topic_outlet(session, "White_House", "Breitbart")
        for topic, cat in SCENARIO_BELIEFS.items():
            workflow.assign(session, topic, SentimentCategory(cat))
        workflow.finalize_user_hive(session)
        workflow.reveal(session)
        workflow.select_conflict(session, "United_States")
        with pytest.raises(NotFoundError):
            workflow.add_note(session, "x", "no-such-article", 0)
        with pytest.raises(InputError):
            workflow.add_note(session, "x", workflow.ann.snapshot.articles[0].id, 99)

    def test_notes_append_only_with_monotone_timestamps(self, workflow):
        session = workflow.new_session()
        drive_full_round(workflow, session)
        notes = session.rounds[0].notes
        assert [n.text for n in notes] == ["plain note", "with ref"]
        assert notes[0].created_at <= notes[1].created_at


class TestSummaryAndPersistence:
    def test_empty_summary(self, workflow):
        session = workflow.new_session()
        summary = workflow.summary(session)
        assert summary["rounds"] == []

    def test_three_rounds_in_order(self, workflow):
        session = workflow.new_session()
        for _ in range(3):
            drive_full_round(workflow, session)
        summary = workflow.summary(session)
        assert [r["index"] for r in summary["rounds"]] == [0, 1, 2]
        assert all(r["stage"] == "done" for r in summary["rounds"])

    def test_roundtrip_identity(self, workflow, tmp_path):
        store = SessionStore(tmp_path)
        session = workflow.new_session(seg=SegmentationPoint(0.4, 0.6), threshold=3)
        drive_full_round(workflow, session)
        store.save(session)
        loaded = store.load(session.id)
        assert loaded.to_record() == session.to_record()

    def test_summary_survives_reload(self, workflow, tmp_path):
        store = SessionStore(tmp_path)
        session = workflow.new_session()
        drive_full_round(workflow, session)
        before = workflow.summary(session)
        store.save(session)
        assert workflow.summary(store.load(session.id)) == before

    def test_unknown_id(self, tmp_path):
        with pytest.raises(NotFoundError):
            SessionStore(tmp_path).load("nope")

    def test_corrupt_log_detected(self, workflow, tmp_path):
        store = SessionStore(tmp_path)
        session = workflow.new_session()
        workflow.start_round(session)
        store.save(session)
        path = tmp_path / session.id / "log.jsonl"
        text = path.read_text().replace("topic_selection", "topic_sElection", 1)
        path.write_text(text)
        with pytest.raises(InputError):
            store.load(session.id)

    def test_incremental_saves_append(self, workflow, tmp_path):
        store = SessionStore(tmp_path)
        session = workflow.new_session()
        workflow.start_round(session)
        store.save(session)
        first_lines = (tmp_path / session.id / "log.jsonl").read_text().count("\n")
        workflow.choose_topic_outlet(session, "White_House", "Breitbart")
        store.save(session)
        second_lines = (tmp_path / session.id / "log.jsonl").read_text().count("\n")
        assert second_lines > first_lines
        loaded = store.load(session.id)
        assert loaded.to_record() == session.to_record()

    def test_transition_log_records_failures(self, workflow):
        session = workflow.new_session()
        workflow.start_round(session)
        with pytest.raises(StageError):
            workflow.reveal(session)
        failures = [t for t in session.transitions if not t.ok]
        assert failures and failures[-1].op == "reveal"
