from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "trsc._trsc",
    [
        "src/bindings.cpp",
        "src/ldsc.cpp",
        "src/pfc.cpp",
        "src/rtm.cpp",
        "src/mac.cpp",
        "src/cost.cpp",
        "src/workload.cpp",
    ],
    include_dirs=["include"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
