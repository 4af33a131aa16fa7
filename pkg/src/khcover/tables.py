"""Access to the shipped PD corpus."""

from __future__ import annotations

from importlib import resources

from .diagram import LinkDiagram, parse_pd

__all__ = ["names", "load", "source_text"]


def _dir():
    return resources.files(__package__) / "corpus"


def names() -> list[str]:
    out = []
    for entry in _dir().iterdir():
        if entry.name.endswith(".pd"):
            out.append(entry.name[:-3])
    return sorted(out)


def source_text(name: str) -> str:
    f = _dir() / (name + ".pd")
    if not f.is_file():
        raise KeyError("no corpus diagram named %r" % name)
    return f.read_text()


def load(name: str) -> LinkDiagram:
    code = "".join(
        line
        for line in source_text(name).splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    )
    return parse_pd(code, name=name)
