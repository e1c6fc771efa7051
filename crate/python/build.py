"""Builds the extension with cargo and copies it next to this script as an
importable module (`couplings.so` / `couplings.pyd`)."""

import shutil
import subprocess
import sys
from pathlib import Path

here = Path(__file__).resolve().parent
root = here.parent

subprocess.run(
    ["cargo", "build", "--release", "-p", "coupling-py", "--features", "extension-module"],
    cwd=root,
    check=True,
)

names = {"linux": "libcouplings.so", "darwin": "libcouplings.dylib", "win32": "couplings.dll"}
built = root / "target" / "release" / names.get(sys.platform, "libcouplings.so")
suffix = ".pyd" if sys.platform == "win32" else ".so"
target = here / ("couplings" + suffix)
shutil.copyfile(built, target)
print(f"{built} -> {target}")
