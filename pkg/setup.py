from setuptools import setup
from os import path
import os

here = path.abspath(path.dirname(__file__))

# Get the long description from the README file
with open(path.join(here, "README.rst"), encoding="utf-8") as f:
    long_description = f.read()

setup(
    name="open_vlc",
    packages=[
        "open_vlc",
        "open_vlc.channel",
        "open_vlc.detection",
        "open_vlc.modulation",
        "open_vlc.placement",
        "open_vlc.simulation",
        "open_vlc.utils",
    ],
    version="0.1.0",
    description="Link-level simulation of generalized spatial modulation and"
    " related MIMO schemes in indoor visible light communication",
    long_description=long_description,
    long_description_content_type="text/x-rst",
    # For a list of valid classifiers, see https://pypi.org/classifiers/
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering",
        "License :: OSI Approved :: GNU Affero General Public License v3 or later (AGPLv3+)",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
    ],
    python_requires=">=3.8, <4",  # 3.8 is needed for math.comb
    install_requires=[
        "pandas>=1.5",  # pandas 1.5 renamed line_terminator to lineterminator
        "numpy",
        "scipy",
        "tqdm",
        "pyyaml",
    ],
    extras_require={
        "dev": [
            "flake8",
            "pylint",
            "pytest",
            "pre-commit",
            "bump2version",
        ]
    },
    package_data={
        "open_vlc": [
            os.path.join("utils", "config", "*.yml"),
        ]
    },
    entry_points={
        "console_scripts": ["open-vlc=open_vlc.cli:main"],
    },
)
