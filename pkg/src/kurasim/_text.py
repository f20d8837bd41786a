"""Shortest round-trip decimal formatting shared by every text artifact."""


def fmt(x) -> str:
    # repr of a Python float is the shortest decimal that parses back
    # to the same bits, which makes text artifacts byte-comparable
    return repr(float(x))
