"""The falg command line on the files in demos/data.

Run: python demos/cli_tour.py
"""

import io
from pathlib import Path

from falg.cli import run

DATA = Path(__file__).parent / "data"

SESSION = [
    ["check", "p1.falg"],
    ["word", "p1.falg", "f(f(f(a)))", "f(a)"],
    ["word", "p1.falg", "f(a)", "a"],
    ["classes", "p1.falg", "--depth", "3"],
    ["saturate", "p1.falg", "--max-classes", "100"],
    ["monoid", "powerset.falg"],
    ["classes", "monoid_theory.falg", "--depth", "3", "--inst-depth", "3"],
    ["monoid", "monoid_theory.falg", "--inst-depth", "2"],
    ["laws", "z3_mset.falg"],
    ["witness", "p1.falg", "--bound", "2"],
    ["chain", "p1.falg", "--depth", "3"],
    ["word", "p1.falg", "f(a)", "a", "--json"],
]

for argv in SESSION:
    argv = [argv[0], str(DATA / argv[1]), *argv[2:]]
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    print(f"$ falg {argv[0]} {Path(argv[1]).name} {' '.join(argv[2:])}".rstrip())
    print(out.getvalue().rstrip())
    if err.getvalue():
        print(err.getvalue().rstrip())
    print(f"[exit {code}]\n")
