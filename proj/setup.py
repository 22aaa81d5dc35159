from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

core_sources = [
    "src/special.cpp",
    "src/fft.cpp",
    "src/measure.cpp",
    "src/grid.cpp",
    "src/analytic.cpp",
    "src/hankel.cpp",
    "src/criteria.cpp",
    "src/harness.cpp",
    "src/report.cpp",
    "src/config.cpp",
    "src/cli.cpp",
]

setup(
    ext_modules=[
        Pybind11Extension(
            "hml._hml",
            sources=["python/bindings.cpp"] + core_sources,
            include_dirs=["include", "vendor"],
            cxx_std=20,
        )
    ],
    cmdclass={"build_ext": build_ext},
)
