from setuptools import setup, find_packages

setup(
    name="hyperq",
    version="1.0.0",
    description="HyperQ - twistor geometry of the hyperquadric Q^{2,2}",
    packages=find_packages(exclude=["tests"]),
    py_modules=["HyperQ"],
    install_requires=[
        "numpy",
        "matplotlib",
        "colorama",
        "humanize",
    ],
    extras_require={
        "test": ["pytest", "hypothesis"],
    },
    entry_points={
        "console_scripts": [
            "hyperq=HyperQ:main",
        ],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.8",
    include_package_data=True,
)
