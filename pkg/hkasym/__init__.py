"""hkasym - numerical evaluation and large-time asymptotics of heat kernels on H-type groups."""

__version__ = "0.1.0"
