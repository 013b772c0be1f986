"""Reading and writing tries as dictionary files and edge lists.

Edge-list files look like::

    4 2
    alphabet: a b
    0 1 a
    0 2 b
    2 3 a

The first line is ``n sigma``.  The ``alphabet:`` line is optional on input
(without it the alphabet is ``a, b, ...`` or the sorted set of symbols used,
whichever fits ``sigma``) and always written on output.  Edges are written in
normal form: pre-order node ids, one edge per child in increasing order.
"""

from __future__ import annotations

import re

from .trie import Alphabet, Trie, TrieError, build_from_dictionary, build_from_edges, default_alphabet

_HEADER = re.compile(rb"^\s*(\d+)\s+(\d+)\s*$")


class InputFormatError(ValueError):
    pass


def split_lines(data: bytes) -> list[bytes]:
    """Lines without terminators; a final newline does not start a new line."""
    if not data:
        return []
    lines = data.split(b"\n")
    if lines[-1] == b"":
        lines.pop()
    return [ln[:-1] if ln.endswith(b"\r") else ln for ln in lines]


def decode_strings(data: bytes, mode: str = "bytes") -> list[tuple]:
    """One string per line: byte values in ``bytes`` mode, characters in ``utf8``."""
    lines = split_lines(data)
    if mode == "bytes":
        return [tuple(ln) for ln in lines]
    if mode == "utf8":
        try:
            return [tuple(ln.decode("utf-8")) for ln in lines]
        except UnicodeDecodeError as exc:
            raise InputFormatError(f"dictionary is not valid UTF-8: {exc}") from None
    raise ValueError(f"unknown alphabet mode {mode!r}")


def read_dictionary(data: bytes, mode: str = "bytes") -> Trie:
    strings = decode_strings(data, mode)
    alphabet = None
    if not any(strings):
        alphabet = Alphabet([0]) if mode == "bytes" else default_alphabet(1)
    return build_from_dictionary(strings, alphabet)


def looks_like_edges(data: bytes) -> bool:
    for ln in split_lines(data):
        if ln.strip():
            return bool(_HEADER.match(ln))
    return False


def read_edges(text: str | bytes) -> Trie:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError:
            raise InputFormatError("edge list is not valid UTF-8") from None
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InputFormatError("empty edge-list file")
    head = lines[0].split()
    if len(head) != 2 or not all(x.isdigit() for x in head):
        raise InputFormatError("first line must be 'n sigma'")
    n, sigma = map(int, head)
    body = lines[1:]
    alphabet = None
    if body and body[0].startswith("alphabet:"):
        alphabet = Alphabet(body[0][len("alphabet:"):].split())
        body = body[1:]
        if alphabet.sigma != sigma:
            raise InputFormatError(f"alphabet line lists {alphabet.sigma} symbols, header says {sigma}")
    if len(body) != n - 1:
        raise InputFormatError(f"expected {n - 1} edge lines, found {len(body)}")
    edges = []
    for lineno, ln in enumerate(body, start=2):
        parts = ln.split()
        if len(parts) != 3 or not parts[0].isdigit() or not parts[1].isdigit():
            raise InputFormatError(f"edge line {lineno}: expected 'parent child symbol', got {ln!r}")
        edges.append((int(parts[0]), int(parts[1]), parts[2]))
    if alphabet is None:
        alphabet = _guess_alphabet({e[2] for e in edges}, sigma)
    return build_from_edges(n, edges, alphabet)


def _guess_alphabet(used: set, sigma: int) -> Alphabet:
    if sigma < 1:
        raise InputFormatError("sigma must be positive")
    default = default_alphabet(sigma)
    if all(s in default for s in used):
        return default
    if len(used) == sigma:
        return Alphabet.of(used)
    raise InputFormatError(f"{len(used)} distinct symbols but sigma = {sigma}; add an 'alphabet:' line")


def write_edges(t: Trie) -> str:
    syms = [str(s) for s in t.alphabet]
    if any(not s or any(ch.isspace() for ch in s) for s in syms):
        raise TrieError("symbols containing whitespace cannot be written as an edge list")
    lines = [f"{t.n} {t.sigma}", "alphabet: " + " ".join(syms)]
    lines += [f"{p} {v} {s}" for p, v, s in t.edges()]
    return "\n".join(lines) + "\n"
