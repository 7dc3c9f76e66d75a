#!/usr/bin/env python3
# Copyright 2026 The blockrepair Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates corpus/ from the bug table below.

Usage: make_corpus.py BLOCKREPAIR_BINARY OUT_DIR

Fault locations come from `blockrepair extract` and are cross-checked
against difflib; every buggy project must fail its tests and every fixed
project must pass them.
"""

import difflib
import json
import pathlib
import shutil
import subprocess
import sys
import tempfile

REF = "ref"

BUGS = [
    {
        "bug_id": "Calc-1",
        "module": "Calc",
        "sources": {
            "Calc.mj": (
                """class Calc {
  int max(int a, int b) {
    if (a > b) {
      return b;
    }
    return b;
  }

  int min(int a, int b) {
    if (a < b) {
      return a;
    }
    return b;
  }
}
""",
                {"      return b;\n    }\n    return b;": "      return a;\n    }\n    return b;"},
            ),
        },
        "tests": {
            "CalcTest.mj": """class CalcTest {
  void testMax() {
    assertEquals(3, Calc.max(3, 2));
    assertEquals(3, Calc.max(2, 3));
  }

  void testMin() {
    assertEquals(2, Calc.min(3, 2));
  }
}
""",
        },
        "plants": [{"rank": 4, "fragments": [REF]}],
    },
    {
        "bug_id": "Calc-2",
        "module": "Calc",
        "sources": {
            "Stats.mj": (
                """class Stats {
  int range(int[] xs) {
    int lo = 0;
    int hi = 0;
    for (int i = 0; i < xs.length; i++) {
      if (xs[i] < lo) {
        lo = xs[i];
      }
      if (xs[i] > hi) {
        hi = xs[i];
      }
    }
    return hi - lo;
  }
}
""",
                {"int lo = 0;": "int lo = xs[0];", "int hi = 0;": "int hi = xs[0];"},
            ),
        },
        "tests": {
            "StatsTest.mj": """class StatsTest {
  void testRange() {
    int[] xs = new int[3];
    xs[0] = 5;
    xs[1] = 9;
    xs[2] = 7;
    assertEquals(4, Stats.range(xs));
  }

  void testNegative() {
    int[] xs = new int[2];
    xs[0] = -3;
    xs[1] = -8;
    assertEquals(5, Stats.range(xs));
  }
}
""",
        },
        "plants": [{"rank": 9, "fragments": [REF]}],
    },
    {
        "bug_id": "Calc-3",
        "module": "Calc",
        "sources": {
            "Div.mj": (
                """class Div {
  int safeDiv(int a, int b) {
    return a / b;
  }

  int half(int a) {
    return a / 2;
  }
}
""",
                {"    return a / b;": "    if (b == 0) {\n      return 0;\n    }\n    return a / b;"},
            ),
        },
        "tests": {
            "DivTest.mj": """class DivTest {
  void testDiv() {
    assertEquals(2, Div.safeDiv(6, 3));
  }

  void testZero() {
    assertEquals(0, Div.safeDiv(6, 0));
  }

  void testHalf() {
    assertEquals(3, Div.half(7));
  }
}
""",
        },
        # Guarding on b needs the enclosing signature from the context.
        "plants": [{"rank": 3, "fragments": [REF], "needs_context": "int b"}],
    },
    {
        "bug_id": "Calc-4",
        "module": "Calc",
        "sources": {
            "Temp.mj": (
                """class Temp {
  int toF(int c) {
    return c * 9 / 5 + 23;
  }

  int toC(int f) {
    return (f - 23) * 5 / 9;
  }
}
""",
                {"+ 23;": "+ 32;", "(f - 23)": "(f - 32)"},
            ),
        },
        "tests": {
            "TempTest.mj": """class TempTest {
  void testToF() {
    assertEquals(212, Temp.toF(100));
    assertEquals(32, Temp.toF(0));
  }

  void testToC() {
    assertEquals(100, Temp.toC(212));
  }
}
""",
        },
        # No single output fixes both chunks.
        "plants": [
            {"rank": 20, "fragments": [REF, None]},
            {"rank": 30, "fragments": [None, REF]},
        ],
    },
    {
        "bug_id": "Calc-5",
        "module": "Calc",
        "sources": {
            "Geo.mj": (
                """class Geo {
  int area(int w, int h) {
    return w + h;
  }

  int perimeter(int w, int h) {
    return 2 * w + h;
  }

  int volume(int w, int h, int d) {
    return w * h + d;
  }
}
""",
                {"return w + h;": "return w * h;", "2 * w + h": "2 * (w + h)",
                 "w * h + d": "w * h * d"},
            ),
        },
        "tests": {
            "GeoTest.mj": """class GeoTest {
  void testArea() {
    assertEquals(12, Geo.area(3, 4));
  }

  void testPerimeter() {
    assertEquals(14, Geo.perimeter(3, 4));
  }

  void testVolume() {
    assertEquals(24, Geo.volume(2, 3, 4));
  }
}
""",
        },
        "plants": [{"rank": 1, "fragments": [REF, REF, REF]}],
    },
    {
        "bug_id": "Text-1",
        "module": "Text",
        "sources": {
            "Sign.mj": (
                """class Sign {
  int sign(int x) {
    if (x > 1) {
      return 1;
    }
    if (x < 0) {
      return -1;
    }
    return 0;
  }
}
""",
                {"(x > 1)": "(x > 0)"},
            ),
        },
        "tests": {
            "SignTest.mj": """class SignTest {
  void testPositive() {
    assertEquals(1, Sign.sign(5));
    assertEquals(1, Sign.sign(1));
  }

  void testNegative() {
    assertEquals(-1, Sign.sign(-3));
  }
}
""",
        },
        # Rank 2 passes the weak tests but maps 0 to 1.
        "plants": [
            {"rank": 2, "fragments": ["    if (x >= 0) {"]},
            {"rank": 6, "fragments": [REF]},
        ],
    },
    {
        "bug_id": "Text-2",
        "module": "Text",
        "sources": {
            "Clip.mj": (
                """class Clip {
  int lower(int x) {
    return Math.max(x, 1);
  }

  int upper(int x) {
    return Math.min(x, 9);
  }

  int clamp(int x) {
    return upper(x);
  }
}
""",
                {"Math.max(x, 1)": "Math.max(x, 0)", "Math.min(x, 9)": "Math.min(x, 10)",
                 "return upper(x);": "return upper(lower(x));"},
            ),
        },
        "tests": {
            "ClipTest.mj": """class ClipTest {
  void testClamp() {
    assertEquals(0, Clip.clamp(-5));
    assertEquals(10, Clip.clamp(50));
    assertEquals(5, Clip.clamp(5));
  }
}
""",
        },
        # The generator never finds the reference; only a plausible rewrite.
        "plants": [
            {"rank": 5, "fragments": ["    return Math.max(x, 0);", "    return Math.min(x, 10);",
                                      "    return Math.max(0, Math.min(x, 10));"]},
        ],
    },
    {
        "bug_id": "Text-3",
        "module": "Text",
        "sources": {
            "Arr.mj": (
                """class Arr {
  int sum(int[] xs) {
    int total = 0;
    for (int i = 0; i <= xs.length; i++) {
      total += xs[i];
    }
    return total;
  }

  int mean(int[] xs) {
    if (xs.length == 0) {
      return 0;
    }
    return sum(xs) / xs.length + 1;
  }
}
""",
                {"i <= xs.length": "i < xs.length", "xs.length + 1;": "xs.length;"},
            ),
        },
        "tests": {
            "ArrTest.mj": """class ArrTest {
  void testSum() {
    int[] xs = new int[3];
    xs[0] = 1;
    xs[1] = 2;
    xs[2] = 6;
    assertEquals(9, Arr.sum(xs));
  }

  void testMean() {
    int[] xs = new int[2];
    xs[0] = 4;
    xs[1] = 8;
    assertEquals(6, Arr.mean(xs));
  }
}
""",
        },
        "plants": [{"rank": 40, "fragments": [REF, REF]}],
    },
    {
        "bug_id": "Bank-1",
        "module": "Bank",
        "sources": {
            "Account.mj": (
                """class Account {
  int balance = 0;

  void deposit(int amount) {
    balance = balance - amount;
  }

  boolean withdraw(int amount) {
    if (amount > balance) {
      return false;
    }
    balance = balance - amount;
    return true;
  }

  int getBalance() {
    return balance;
  }
}
""",
                {"  void deposit(int amount) {\n    balance = balance - amount;":
                 "  void deposit(int amount) {\n    balance = balance + amount;"},
            ),
            "Fees.mj": (
                """class Fees {
  int fee(int amount) {
    if (amount >= 100) {
      return 1;
    }
    return 2;
  }
}
""",
                {"amount >= 100": "amount > 100"},
            ),
        },
        "tests": {
            "AccountTest.mj": """class AccountTest {
  void testDeposit() {
    Account.deposit(50);
    assertEquals(50, Account.getBalance());
    assertTrue(Account.withdraw(20));
    assertEquals(30, Account.getBalance());
  }

  void testFee() {
    assertEquals(2, Fees.fee(100));
    assertEquals(1, Fees.fee(150));
  }
}
""",
        },
        "plants": [{"rank": 6, "fragments": [REF, REF]}],
    },
    {
        "bug_id": "Bank-2",
        "module": "Bank",
        "sources": {
            "Ledger.mj": (
                """class Ledger {
  int total = 0;
  int count = 0;

  void add(int amount) {
    total += amount;
  }

  int average() {
    return total / count;
  }
}
""",
                {"    total += amount;": "    total += amount;\n    count++;",
                 "total / count;": "total / Math.max(count, 1);"},
            ),
        },
        "tests": {
            "LedgerTest.mj": """class LedgerTest {
  void testEmpty() {
    assertEquals(0, Ledger.average());
  }

  void testAverage() {
    Ledger.add(10);
    Ledger.add(20);
    assertEquals(15, Ledger.average());
  }
}
""",
        },
        "plants": [{"rank": 1, "fragments": [REF, REF]}],
    },
]

CONFIG = {
    "beam_size": 100,
    "mc": 400,
    "seed": 1,
    "timeout_seconds": 120.0,
}


def apply_edits(text, edits):
    for old, new in edits.items():
        if text.count(old) != 1:
            sys.exit(f"edit {old!r} does not match exactly once")
        text = text.replace(old, new)
    return text


def lines(text):
    return text.splitlines()


def run_tests(tool, root):
    return subprocess.run([tool, "lang", "test", str(root)],
                          capture_output=True).returncode == 0


def build_bug(tool, bug, out):
    bug_dir = out / "bugs" / bug["bug_id"]
    project = bug_dir / "project"
    project.mkdir(parents=True)
    entries, reference = [], []
    fixed_root = pathlib.Path(tempfile.mkdtemp())
    for name, (buggy, edits) in sorted(bug["sources"].items()):
        fixed = apply_edits(buggy, edits)
        (project / name).write_text(buggy)
        (fixed_root / name).write_text(fixed)
        extracted = json.loads(subprocess.run(
            [tool, "extract", "--buggy", str(project / name), "--fixed",
             str(fixed_root / name)], check=True, capture_output=True).stdout)
        a, b = lines(buggy), lines(fixed)
        hunks = [op for op in difflib.SequenceMatcher(None, a, b, autojunk=False)
                 .get_opcodes() if op[0] != "equal"]
        if len(hunks) != len(extracted):
            sys.exit(f"{bug['bug_id']}/{name}: extract and difflib disagree")
        for chunk, (_, i1, i2, j1, j2) in zip(extracted, hunks):
            if (chunk["start_line"], chunk["end_line"]) != (i1 + 1, i2):
                sys.exit(f"{bug['bug_id']}/{name}: extract and difflib disagree")
            entries.append({"file": name, "start_line": i1 + 1, "end_line": i2})
            reference.append("\n".join(b[j1:j2]))
    for name, text in bug["tests"].items():
        (project / name).write_text(text)
        (fixed_root / name).write_text(text)
    if run_tests(tool, project) or not run_tests(tool, fixed_root):
        sys.exit(f"{bug['bug_id']}: tests do not separate buggy and fixed")
    shutil.rmtree(fixed_root)

    (project / "project.json").write_text(json.dumps({
        "module_id": bug["module"],
        "build": ["${TOOL}", "lang", "check", "."],
        "test": ["${TOOL}", "lang", "test", "."],
        "reference_fix": reference,
    }, indent=2) + "\n")
    (bug_dir / "faults.json").write_text(json.dumps(
        {"bug_id": bug["bug_id"], "entries": entries}, indent=2) + "\n")
    plants = []
    for p in bug["plants"]:
        frags = [reference[i] if f == REF else f for i, f in enumerate(p["fragments"])]
        plant = {"rank": p["rank"], "fragments": frags}
        if "needs_context" in p:
            plant["needs_context"] = p["needs_context"]
        plants.append(plant)
    (bug_dir / "hints.json").write_text(json.dumps({"plants": plants}, indent=2) + "\n")
    rel = pathlib.Path("bugs") / bug["bug_id"]
    return {"bug_id": bug["bug_id"], "project": str(rel / "project"),
            "faults": str(rel / "faults.json"), "hints": str(rel / "hints.json")}


def main():
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    tool, out = sys.argv[1], pathlib.Path(sys.argv[2])
    if (out / "bugs").exists():
        shutil.rmtree(out / "bugs")
    manifest = {"bugs": [build_bug(tool, bug, out) for bug in BUGS]}
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    (out / "config.json").write_text(json.dumps(CONFIG, indent=2) + "\n")


if __name__ == "__main__":
    main()
