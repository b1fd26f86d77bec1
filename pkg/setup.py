# -*- coding: utf-8 -*-
from setuptools import setup

packages = \
['walkmem', 'walkmem.core']

package_data = \
{'': ['*'], 'walkmem': ['data/*']}

install_requires = \
['numpy>=1.21.0,<3.0.0',
 'scipy>=1.7.0,<2.0.0',
 'tqdm>=4.62.3,<5.0.0']

entry_points = \
{'console_scripts': ['walkmem = walkmem.__main__:run']}

setup_kwargs = {
    'name': 'walkmem',
    'version': '0.1.0',
    'description': 'Discrete-time quantum walks as a quantum memory: simulate, retrieve, verify',
    'long_description': None,
    'author': None,
    'author_email': None,
    'maintainer': None,
    'maintainer_email': None,
    'url': None,
    'packages': packages,
    'package_data': package_data,
    'install_requires': install_requires,
    'entry_points': entry_points,
    'python_requires': '>=3.9,<4.0',
}
from build import *
build(setup_kwargs)

setup(**setup_kwargs)
