"""Bundled English stopword list.

Small on purpose: retrieval behaviour stays inspectable and deterministic.
Pass a custom set to the tokenizer or index to override.
"""

DEFAULT_STOPWORDS = frozenset(
    """
    a an and are as at be but by for from had has have if in into is it its
    no not of on or such that the their then there these they this to was
    were which will with
    """.split()
)
