import sqlite3
import json
import logging

from config import Config

logger = logging.getLogger(__name__)


class ResultsDatabase:
    def __init__(self, db_path=None):
        self.db_path = db_path or Config.RESULTS_DB
        self.init_database()

    def init_database(self):
        """Initialize database tables."""
        conn = sqlite3.connect(self.db_path)
        cursor = conn.cursor()

        # One row per search run (the run manifest)
        cursor.execute('''
            CREATE TABLE IF NOT EXISTS runs (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                subcommand TEXT,
                n INTEGER,
                r INTEGER,
                objective TEXT,
                seed INTEGER,
                is_td INTEGER DEFAULT 0,
                started_at TEXT,
                finished_at TEXT,
                manifest TEXT
            )
        ''')

        # Triangle-distinct graphs found so far (graph6 text is the identity, no canonical form)
        cursor.execute('''
            CREATE TABLE IF NOT EXISTS td_graphs (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                n INTEGER,
                r INTEGER,
                graph6 TEXT UNIQUE,
                f3 REAL,
                worker_id INTEGER,
                seed INTEGER,
                found_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
            )
        ''')

        conn.commit()
        conn.close()

    def record_run(self, manifest):
        """Store a run manifest (a dict as produced by RunManifest.to_dict)."""
        config = manifest.get('config', {})
        result = manifest.get('result', {})
        conn = sqlite3.connect(self.db_path)
        cursor = conn.cursor()
        cursor.execute('''
            INSERT INTO runs (subcommand, n, r, objective, seed, is_td, started_at, finished_at, manifest)
            VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)
        ''', (
            manifest.get('subcommand'),
            config.get('n'),
            config.get('r'),
            config.get('objective'),
            config.get('seed'),
            1 if result.get('is_td') else 0,
            manifest.get('started_at'),
            manifest.get('finished_at'),
            json.dumps(manifest, sort_keys=True),
        ))
        run_id = cursor.lastrowid
        conn.commit()
        conn.close()
        return run_id

    def record_graph(self, n, r, graph6, f3_value=None, worker_id=None, seed=None):
        """Store a TD graph; returns False when the same graph6 line is already stored."""
        conn = sqlite3.connect(self.db_path)
        cursor = conn.cursor()
        try:
            cursor.execute('''
                INSERT INTO td_graphs (n, r, graph6, f3, worker_id, seed)
                VALUES (?, ?, ?, ?, ?, ?)
            ''', (n, r, graph6, f3_value, worker_id, seed))
            conn.commit()
            return True
        except sqlite3.IntegrityError:
            logger.info(f"Graph {graph6} already recorded")
            return False
        finally:
            conn.close()

    def get_graphs(self, n=None, r=None):
        """Get stored TD graphs, optionally filtered by order and degree."""
        query = 'SELECT n, r, graph6, f3, worker_id, seed, found_at FROM td_graphs WHERE 1 = 1'
        params = []
        if n is not None:
            query += ' AND n = ?'
            params.append(n)
        if r is not None:
            query += ' AND r = ?'
            params.append(r)
        query += ' ORDER BY n, r, id'

        conn = sqlite3.connect(self.db_path)
        cursor = conn.cursor()
        cursor.execute(query, params)
        rows = cursor.fetchall()
        conn.close()

        return [
            {'n': row[0], 'r': row[1], 'graph6': row[2], 'f3': row[3],
             'worker_id': row[4], 'seed': row[5], 'found_at': row[6]}
            for row in rows
        ]

    def get_stats(self):
        """Get database statistics."""
        conn = sqlite3.connect(self.db_path)
        cursor = conn.cursor()

        cursor.execute('SELECT COUNT(*) FROM runs')
        total_runs = cursor.fetchone()[0]

        cursor.execute('SELECT COUNT(*) FROM runs WHERE is_td = 1')
        successful_runs = cursor.fetchone()[0]

        cursor.execute('SELECT COUNT(*) FROM td_graphs')
        total_graphs = cursor.fetchone()[0]

        cursor.execute('SELECT n, r, COUNT(*) FROM td_graphs GROUP BY n, r ORDER BY n, r')
        by_order = [{'n': row[0], 'r': row[1], 'graphs': row[2]} for row in cursor.fetchall()]

        conn.close()

        return {
            'total_runs': total_runs,
            'successful_runs': successful_runs,
            'td_graphs': total_graphs,
            'by_order': by_order,
        }
