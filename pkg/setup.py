from setuptools import setup, find_packages

setup(
    name="thomcalc",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires=[
        "pydantic>=2.0.0",
        "python-dotenv>=0.19.0",
        "sympy>=1.12",
        "PyYAML>=6.0.0",
    ],
    extras_require={
        "test": [
            "pytest>=7.0.0",
            "hypothesis>=6.0.0",
        ],
    },
    entry_points={
        'console_scripts': [
            'thomcalc=thomcalc.__main__:run',
            'thomcalc_verify=thomcalc.cli.verify_command:run',
        ],
    },
    python_requires='>=3.9',
    description="Characteristic classes, Steenrod-type operations and pushforwards in bigraded cohomology rings over Z/l",
)
