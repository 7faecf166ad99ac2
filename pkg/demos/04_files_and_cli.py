# %% [markdown]
# # Graph files, generators and the command line
#
# Graphs are stored in a small text format: a `p bis n m e` header, one
# `e u v` line per edge and `c` comment lines.  The same operations are
# available from the `bisfptas` command.

# %%
import json
import subprocess
import sys
import tempfile
from pathlib import Path

from bisfptas import gen_random, parse, serialize

g = gen_random(6, 5, 3, seed=2)
text = serialize(g, comments=["six by five, left degree <= 3"])
print(text)
assert parse(text) == g

# %%
work = Path(tempfile.mkdtemp())
path = work / "g.bis"
path.write_text(text)


def cli(*args):
    out = subprocess.run([sys.executable, "-m", "bisfptas", *args], capture_output=True, text=True)
    return out.returncode, out.stdout, out.stderr


code, out, _ = cli("exact", str(path))
print(code, json.loads(out)["result"])
# the guaranteed depth for epsilon = 0.5 is far too deep to run, so the
# command stops before starting (exit 3); a fixed depth is the practical mode
code, out, err = cli("count", str(path), "--epsilon", "0.5")
print(code, err.strip())
code, out, err = cli("count", str(path), "--depth", "4")
print(code, err.strip(), json.loads(out)["result"]["ln_Z"])
code, out, _ = cli("compare", str(path), "--depth", "3")
print(json.dumps(json.loads(out)["result"], indent=1)[:600])

# %% [markdown]
# The heavy generator attaches most left vertices to one or two hubs, which
# exercises the depth charge for high-degree right vertices.

# %%
code, _, _ = cli("gen", "random", "--n", "30", "--m", "20", "--style", "heavy",
                 "--seed", "1", "--out", str(work / "heavy.bis"))
code, out, _ = cli("count", str(work / "heavy.bis"), "--depth", "6")
print(json.loads(out)["input"], json.loads(out)["result"]["nodes"])
