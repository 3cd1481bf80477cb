from setuptools import find_packages, setup

setup(
    name="ldgdiffusion",
    version="0.1.0",
    description="Local discontinuous Galerkin solver for 2D diffusion on triangular meshes",
    packages=find_packages(include=["ldgdiffusion", "ldgdiffusion.*"]),
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.24",
        "scipy>=1.10",
        "python-dotenv==1.0.0",
        "matplotlib==3.7.3",
    ],
    entry_points={"console_scripts": ["ldg = ldgdiffusion.cli:main"]},
)
