# -*- coding: utf-8 -*-
"""
Installs:
    - overlap-gen
"""
import codecs

from setuptools import setup, find_packages

install_requires = [r for r in open('requirements.txt').read().split('\n')
                    if r and not r.startswith('#')]

with codecs.open('README.md', encoding='utf-8') as f:
    README = f.read()

setup(
    name='overlap_gen',
    version='0.1.0',
    description='Overlap functions from additive generator pairs: '
                'validation, transformations and counterexample search',
    long_description=README,
    long_description_content_type='text/markdown',
    license='Apache License 2.0',
    packages=find_packages(exclude=('tests', 'docs')),
    install_requires=install_requires,
    python_requires='>=3.9',
    package_data={
        '': ['*.json'],
    },
    tests_require=['hypothesis'],
    test_suite='tests',
    entry_points={
        'console_scripts': [
            'overlap-gen=overlap_gen.scripts.cli:cli',
        ]
    }
)
