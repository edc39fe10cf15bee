import os.path
from setuptools import setup, find_packages


# single source of truth for package version
version_ns = {}
with open(os.path.join('narrative_keyness', 'version.py')) as f:
    exec(f.read(), version_ns)

install_requires = []
with open('requirements.txt') as reqs:
    for line in reqs.readlines():
        req = line.strip()
        if not req or req.startswith('#'):
            continue
        install_requires.append(req)


setup(name='django-narrative-keyness',
      version=version_ns['__version__'],
      description='Temporal keyness analysis of social media dumps: Log '
                  'Ratio key terms per time window, volume timelines and '
                  'shared domain tallies.',
      long_description=open('README.rst').read(),
      long_description_content_type='text/x-rst',
      packages=find_packages(exclude=['local*', 'tests*', 'examples*']),
      install_requires=install_requires,
      include_package_data=True,
      python_requires='>=3.8',
      entry_points={
          'console_scripts': [
              'narrative-keyness = narrative_keyness.cli:main',
          ],
      },
      keywords=['keyness', 'log ratio', 'corpus linguistics', 'django'],
      license='apache 2.0',
      classifiers=[
          'Intended Audience :: Science/Research',
          'License :: OSI Approved :: Apache Software License',
          'Operating System :: POSIX',
          'Programming Language :: Python',
          'Programming Language :: Python :: 3.8',
          'Programming Language :: Python :: 3.9',
          'Programming Language :: Python :: 3.10',
          'Programming Language :: Python :: 3.11',
          'Topic :: Text Processing :: Linguistic',
          'Topic :: Software Development :: Libraries :: Python Modules',
      ],
      )
