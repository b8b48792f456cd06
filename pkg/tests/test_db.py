from pathlib import Path

from core.db import ResultRepository


def test_save_and_read_jobs(tmp_path: Path):
    repo = ResultRepository(tmp_path / "nested" / "jobs.sqlite3")
    first = repo.save_job({"command": "integrate", "decimal": "1.5708", "digits": 5, "details": {"path": ["WallisBase"]}})
    second = repo.save_job({"command": "family", "status": "ok", "details": {"p": 4}})

    assert repo.get_job(first)["details"] == {"path": ["WallisBase"]}
    assert repo.get_job(999) is None
    assert [job["id"] for job in repo.list_jobs()] == [first, second]
    assert [job["command"] for job in repo.list_jobs("family")] == ["family"]
    repo.close()


def test_journal_survives_reopening(tmp_path: Path):
    path = tmp_path / "jobs.sqlite3"
    repo = ResultRepository(path)
    repo.save_job({"command": "landen", "status": "MaxIterations", "iterations": 3})
    repo.log("landen", "job 1: MaxIterations")
    repo.close()

    reopened = ResultRepository(path)
    jobs = reopened.list_jobs()
    assert jobs[0]["status"] == "MaxIterations"
    assert jobs[0]["iterations"] == 3
    assert reopened.audit_entries() == [("landen", "job 1: MaxIterations")]
    reopened.close()
