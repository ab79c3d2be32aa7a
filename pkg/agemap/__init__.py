"""
agemap: acoplamiento bibliográfico clásico y sensible a la antigüedad de
las referencias, con agrupamiento jerárquico y núcleos de referencias.
"""

__version__ = "1.0.0"
