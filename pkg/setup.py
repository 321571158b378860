from setuptools import setup

with open('README.md', encoding='UTF-8') as f:
    long_description = f.read()
with open('requirements.txt', encoding='UTF-8') as f:
    requirements = f.read().splitlines()

__version__ = '0.1.dev0'

setup(
    name='fieldmaps',
    version=__version__,
    license='Apache 2',
    packages=[
        'fieldmaps',
        'fieldmaps._calculus',
        'fieldmaps._command',
        'fieldmaps._data',
        'fieldmaps._series',
        'fieldmaps._solving',
        'fieldmaps._space',
    ],
    package_dir={'': 'src'},
    package_data={'fieldmaps._command': ['schemas/*.json', 'fixtures/*.json']},
    description='Weighted norms, certified bounds and a contraction solver for field maps on finite metric spaces.',
    long_description=long_description,
    long_description_content_type='text/markdown',
    python_requires='>=3.8.0',
    data_files=['README.md', 'requirements.txt'],
    install_requires=requirements,
    tests_require=['pytest'],
    entry_points={
        'console_scripts': ['fieldmaps=fieldmaps._command._main:main'],
    },
)
