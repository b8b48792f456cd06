from __future__ import annotations

import json
import sqlite3
from pathlib import Path
from typing import Any


SCHEMA = """
CREATE TABLE IF NOT EXISTS jobs (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    created_at TEXT NOT NULL DEFAULT CURRENT_TIMESTAMP,
    command TEXT NOT NULL,
    status TEXT NOT NULL,
    method TEXT,
    closed_form TEXT,
    decimal TEXT,
    digits INTEGER,
    iterations INTEGER,
    record TEXT NOT NULL
);

CREATE INDEX IF NOT EXISTS idx_jobs_command ON jobs(command);

CREATE TABLE IF NOT EXISTS audit_log (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    created_at TEXT NOT NULL DEFAULT CURRENT_TIMESTAMP,
    action TEXT NOT NULL,
    details TEXT
);
"""


class ResultRepository:
    def __init__(self, db_path: Path):
        self.db_path = db_path
        self.db_path.parent.mkdir(parents=True, exist_ok=True)
        self.conn = sqlite3.connect(self.db_path)
        self.conn.row_factory = sqlite3.Row
        self.conn.executescript(SCHEMA)
        self.conn.commit()

    def close(self) -> None:
        self.conn.close()

    def log(self, action: str, details: str = "") -> None:
        self.conn.execute(
            "INSERT INTO audit_log(action, details) VALUES (?, ?)",
            (action, details),
        )
        self.conn.commit()

    def save_job(self, record: dict[str, Any]) -> int:
        cursor = self.conn.execute(
            """
            INSERT INTO jobs(command, status, method, closed_form, decimal, digits, iterations, record)
            VALUES (?, ?, ?, ?, ?, ?, ?, ?)
            """,
            (
                record["command"],
                record.get("status", "ok"),
                record.get("method"),
                record.get("closed_form"),
                record.get("decimal"),
                record.get("digits"),
                record.get("iterations"),
                json.dumps(record, sort_keys=True),
            ),
        )
        self.conn.commit()
        return int(cursor.lastrowid)

    def get_job(self, job_id: int) -> dict[str, Any] | None:
        row = self.conn.execute("SELECT record FROM jobs WHERE id=?", (job_id,)).fetchone()
        return json.loads(row["record"]) if row else None

    def list_jobs(self, command: str | None = None) -> list[dict[str, Any]]:
        if command:
            rows = self.conn.execute("SELECT id, record FROM jobs WHERE command=? ORDER BY id", (command,)).fetchall()
        else:
            rows = self.conn.execute("SELECT id, record FROM jobs ORDER BY id").fetchall()
        return [{"id": int(row["id"]), **json.loads(row["record"])} for row in rows]

    def audit_entries(self) -> list[tuple[str, str]]:
        rows = self.conn.execute("SELECT action, details FROM audit_log ORDER BY id").fetchall()
        return [(row["action"], row["details"] or "") for row in rows]
