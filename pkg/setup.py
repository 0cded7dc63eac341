"""Install the ghz_entanglement package."""
from pathlib import Path

from setuptools import find_packages, setup

HERE = Path(__file__).parent

setup(
    name="ghz-entanglement",
    version="1.0.0",
    description="Separability and entanglement of pseudo-pure GHZ states",
    long_description=(HERE / "README.md").read_text(encoding="utf-8"),
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests"]),
    python_requires=">=3.10",
    install_requires=(HERE / "requirements.txt").read_text().split(),
    extras_require={"test": ["pytest>=7.4.0"]},
    entry_points={"console_scripts": ["ghz-entanglement = ghz_entanglement.cli:main"]},
)
