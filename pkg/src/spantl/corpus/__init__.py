"""Small hand-written machines used by the tests, the demos and the CLI docs."""
from importlib import resources

from ..ato_core import parse_machine

NAMES = (
    "ex1_forced_accept",
    "ex2_exists_branch",
    "ex3_forall_branch",
    "ex4_two_universal",
    "ex5_loop",
    "rejecting_branch",
    "nested_universal",
    "input_reader",
    "dead_end",
    "tape_writer",
    "labeled_leaves",
)

# Machines with bounded computations on every input; ex5_loop is the exception.
TERMINATING = tuple(n for n in NAMES if n != "ex5_loop")


def path(name):
    return resources.files(__name__) / f"{name}.ato"


def source(name):
    return path(name).read_text(encoding="utf-8")


def load(name, validate=True):
    return parse_machine(source(name), validate=validate, name=name)
