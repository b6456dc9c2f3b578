from setuptools import setup, find_packages

setup(
    name="penults",
    version="0.1.0",
    packages=find_packages(exclude=["examples", "examples.*"]),
    package_data={"penults": ["data/*.json", "templates/*.j2"]},
    install_requires=[
        "jinja2>=3.0",
        "SQLAlchemy>=1.4.0",
        "pydantic>=2.0",
        "python-dotenv>=1.0",
    ],
    entry_points={"console_scripts": ["penults = penults.cli:main"]},
)
