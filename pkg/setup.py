from pathlib import Path

from setuptools import find_packages, setup

setup(
    name='evolia',
    version='0.1.0',
    description='Nil and nilpotency certificates for evolution algebras',
    long_description=Path('README.md').read_text(encoding='utf-8'),
    long_description_content_type='text/markdown',
    packages=find_packages(include=['evolia', 'evolia.*']),
    python_requires='>=3.8',
    install_requires=Path('requirements.txt').read_text().split(),
    extras_require={'test': Path('tests/requirements.txt').read_text().split()},
    entry_points={'console_scripts': ['evolia=evolia.cli:main']},
)
