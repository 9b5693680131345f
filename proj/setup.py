from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "bbqi._bbqi",
    [
        "python/module.cpp",
        "src/masks.cpp",
        "src/derivation.cpp",
        "src/harness.cpp",
    ],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
