"""Injective renaming of AST names into a target format's lexicon."""

from __future__ import annotations

from typing import Callable, Hashable, Iterable


class NameTable:
    """Assigns each key a distinct rendered name.

    ``render`` proposes a spelling for a raw name; ``reserved`` spellings are
    never handed out.  A proposal that is reserved or already taken gets
    ``_`` appended until it is free, so two keys never share a spelling.
    """

    def __init__(self, render: Callable[[str], str], reserved: Iterable[str] = ()):
        self._render = render
        self._reserved = set(reserved)
        self._by_key: dict[Hashable, str] = {}
        self._taken: set[str] = set()

    def __call__(self, key: Hashable, raw: str | None = None) -> str:
        hit = self._by_key.get(key)
        if hit is not None:
            return hit
        base = raw if raw is not None else str(key)
        name = base
        out = self._render(name)
        while out in self._reserved or out in self._taken:
            name += "_"
            out = self._render(name)
        self._by_key[key] = out
        self._taken.add(out)
        return out

    def __contains__(self, key: Hashable) -> bool:
        return key in self._by_key
