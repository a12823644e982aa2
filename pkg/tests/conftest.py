import pytest

from spantl import corpus

# inputs of length <= 6 over the corpus alphabets
INPUTS = ("", "x", "ab", "bxa", "abab", "abxba", "ababab")

TEMPLATE = """\
states: {states}
alphabet: {alphabet}
init: {init}
accept: {accept}
reject: {reject}
existential: {existential}
universal: {universal}
labeling: {labeling}
bounds: {bounds}
delta:
{delta}
"""

DEFAULTS = dict(states="q0 acc rej", alphabet="_ > a b x", init="q0", accept="acc",
                reject="rej", existential="q0", universal="", labeling="q0",
                bounds="max_nodes=16 tape_cap=4 k=1",
                delta='(q0, >, >) -> (acc, 0, 0, >, "")')


def machine_text(**overrides):
    return TEMPLATE.format(**{**DEFAULTS, **overrides})


@pytest.fixture(params=corpus.TERMINATING)
def machine(request):
    return corpus.load(request.param)

