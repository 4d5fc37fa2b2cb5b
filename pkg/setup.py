#
# Copyright (c) 2026, AdapterRL Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

import codecs
import itertools
import os
import re

from setuptools import find_packages, setup


def read_requirements(filename):
    base = os.path.abspath(os.path.dirname(__file__))
    with codecs.open(os.path.join(base, filename), "rb", "utf-8") as f:
        lineiter = (line.strip() for line in f)
        return [line for line in lineiter if line and not line.startswith("#")]


def read_version():
    base = os.path.abspath(os.path.dirname(__file__))
    with codecs.open(os.path.join(base, "adapterrl", "__init__.py"), "rb", "utf-8") as f:
        return re.search(r'^__version__ = "([^"]+)"', f.read(), re.M).group(1)


requirements = {
    "base": read_requirements("requirements/base.txt"),
    "pytorch": read_requirements("requirements/pytorch.txt"),
    "dev": read_requirements("requirements/dev.txt"),
}

setup(
    name="adapterrl",
    version=read_version(),
    packages=find_packages(exclude=["tests", "tests.*"]),
    author="AdapterRL Authors",
    license="Apache 2.0",
    long_description=open("README.md", encoding="utf8").read(),
    long_description_content_type="text/markdown",
    python_requires=">=3.8",
    install_requires=requirements["base"],
    test_suite="tests",
    extras_require={**requirements, "all": list(itertools.chain(*list(requirements.values())))},
    include_package_data=True,
    package_data={"adapterrl.env": ["maps/*.map"]},
    entry_points={"console_scripts": ["arl=adapterrl.cli:cli"]},
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Programming Language :: Python :: 3",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: Apache Software License",
        "Topic :: Software Development :: Libraries",
        "Topic :: Scientific/Engineering :: Artificial Intelligence",
    ],
)
