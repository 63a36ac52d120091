"""Driving the ``gschur`` command line from Python.

Writes a few JSON inputs to a temporary directory and runs the CLI on
them, printing each report.  The same commands work from a shell.
"""

# %%
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import numpy as np

from gschur import matrix_io

tmp = Path(tempfile.mkdtemp())


def write(name, doc):
    path = tmp / name
    path.write_text(json.dumps(doc))
    return str(path)


def gschur(*args):
    proc = subprocess.run([sys.executable, "-m", "gschur", *args], capture_output=True, text=True)
    print("$ gschur", " ".join(Path(a).name if a.startswith(str(tmp)) else a for a in args), f"(exit {proc.returncode})")
    print(proc.stdout or proc.stderr)
    return proc


# %%
# Real matrices may use the [[x, ...], ...] shorthand; complex ones use [re, im] pairs.
id2 = write("id2.json", [[1, 0], [0, 1]])
gschur("complement", "--a", id2, "--b", id2)

# %%
a = write("a.json", matrix_io.dump_matrix(np.diag([2.0, 1.0])))
b = write("b.json", matrix_io.dump_matrix(np.array([[1.0, 1j], [0, 0]])))
gschur("parsum", "--a", a, "--b", id2, "--text")
gschur("lebesgue", "--a", a, "--b", write("d10.json", [[1, 0], [0, 0]]), "--text")

# %%
# A leaky system: exit status 1 and a message on stderr.
gschur("complement", "--a", write("d10b.json", [[1, 0], [0, 0]]), "--b", write("d01.json", [[0, 0], [0, 1]]))

# %%
# Cross-check the closed forms against the variational oracle.
gschur("verify", "--instances", "3", "--max-dim", "3", "--text")
