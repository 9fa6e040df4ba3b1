from setuptools import setup, find_packages

setup(
    name="galois-torus-workbench",
    version="1.0.0",
    packages=find_packages(exclude=["tests"]),
    install_requires=[
        line.strip()
        for line in open('requirements.txt').readlines()
    ],
    entry_points={
        "console_scripts": ["torus-workbench=cli.main:main"],
    },
    author="Data Science Team",
    description="Exact cohomology, dual-torus and character-torus computations for algebraic tori",
    python_requires=">=3.8",
)
