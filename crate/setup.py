"""Builds the qlrc._native extension by delegating to cargo.

The extension is a cdylib produced by the qlrc-py crate; this build step
compiles it in release mode and copies the shared library to wherever
setuptools expects the extension module.
"""

import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import setup
from setuptools.command.build_ext import build_ext
from setuptools.extension import Extension

ROOT = Path(__file__).resolve().parent


class CargoExtension(Extension):
    def __init__(self, name: str, crate: str, lib_name: str):
        super().__init__(name, sources=[])
        self.crate = crate
        self.lib_name = lib_name


class CargoBuildExt(build_ext):
    def run(self):
        for ext in self.extensions:
            self.build_cargo(ext)

    def build_cargo(self, ext: CargoExtension):
        subprocess.run(
            ["cargo", "build", "--release", "-p", ext.crate],
            cwd=ROOT,
            check=True,
        )
        if sys.platform == "darwin":
            built = ROOT / "target" / "release" / f"lib{ext.lib_name}.dylib"
        elif sys.platform == "win32":
            built = ROOT / "target" / "release" / f"{ext.lib_name}.dll"
        else:
            built = ROOT / "target" / "release" / f"lib{ext.lib_name}.so"
        dest = Path(self.get_ext_fullpath(ext.name))
        dest.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built, dest)


setup(
    ext_modules=[CargoExtension("qlrc._native", crate="qlrc-py", lib_name="qlrc_py")],
    cmdclass={"build_ext": CargoBuildExt},
)
