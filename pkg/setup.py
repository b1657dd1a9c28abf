from setuptools import find_packages, setup


def read(*filenames, **kwargs):
    import io
    from os.path import dirname, join

    encoding = kwargs.get("encoding", "utf-8")
    sep = kwargs.get("sep", "\n")
    buf = []
    for filename in filenames:
        with io.open(join(dirname(__file__), filename), encoding=encoding) as f:
            buf.append(f.read())
    return sep.join(buf)


def requirements(filename):
    return [r for r in read(filename).split("\n") if r.strip()]


setup(
    name="os-dulac",
    version=read("src/os_dulac/VERSION").strip(),
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    package_data={"os_dulac": ["VERSION"]},
    include_package_data=True,
    license="MIT License",
    description="Dulac functions, Bernstein certificates and Darboux integrals "
    "for planar polynomial vector fields.",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    install_requires=requirements("requirements/requirements.txt"),
    python_requires=">=3.8",
    zip_safe=False,
    entry_points={"console_scripts": ["os-dulac = os_dulac.main:main"]},
    classifiers=[
        "Development Status :: 2 - Pre-Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Natural Language :: English",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3 :: Only",
        "Programming Language :: Python :: Implementation :: CPython",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
