"""Build script: compiles the optional Cython core when the toolchain allows.

The package is fully functional without the extension (a numpy implementation
of the same kernels is selected at import); the extension accelerates the
history-integral inner loops.  Build in place with:

    python setup.py build_ext --inplace
"""

from setuptools import setup

kwargs = {
    "package_dir": {"": "src"},
    "packages": ["dekohere"],
}

try:
    import numpy
    from Cython.Build import cythonize

    extensions = cythonize(
        ["src/dekohere/_core.pyx"],
        language_level=3,
    )
    for ext in extensions:
        ext.include_dirs = [numpy.get_include()]
        ext.define_macros = [("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")]
    kwargs["ext_modules"] = extensions
except Exception as exc:  # Cython or compiler unavailable: pure-python install
    print(f"dekohere: building without the compiled core ({exc})")

setup(**kwargs)
