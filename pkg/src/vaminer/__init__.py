"""Vossian Antonomasia miner.

Extracts "the SOURCE of MODIFIER" expressions from news corpora by
combining an exact phrase scanner with a person-name gazetteer built
from a knowledge-base dump, and supports human curation (labeling,
blacklisting) plus frequency analytics over the results.
"""

__version__ = "0.1.0"
