import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("JACOBIGRAMMAR_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("jacobigrammar._kernels", ["src/jacobigrammar/_kernels.pyx"], optional=True)],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)
