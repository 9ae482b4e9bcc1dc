"""Tokenizer for the .susm / .susp / .susc text formats."""

from __future__ import annotations

from dataclasses import dataclass

from .diagnostics import SourceSpan

PUNCT = {"{", "}", "[", "]", "(", ")", ",", "=", ":", ";"}
ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t"}


class LexError(Exception):
    def __init__(self, message: str, span: SourceSpan) -> None:
        super().__init__(message)
        self.span = span


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, ROLE, STRING, ARROW, EOF or the punctuation character itself
    value: str
    span: SourceSpan


def _ident_start(c: str) -> bool:
    return c.isalpha() or c == "_"


def _ident_char(c: str) -> bool:
    return c.isalnum() or c in "_.-"


def tokenize(text: str, file: str = "<input>") -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def span(length: int, at_line: int = 0, at_col: int = 0) -> SourceSpan:
        return SourceSpan(file, at_line or line, at_col or col, max(1, length))

    while i < n:
        c = text[i]
        if c == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if c in " \t\r\ufeff":
            i, col = i + 1, col + 1
            continue
        if c == "/" and text.startswith("//", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == "-" and text.startswith("->", i):
            tokens.append(Token("ARROW", "->", span(2)))
            i, col = i + 2, col + 2
            continue
        if c in PUNCT:
            tokens.append(Token(c, c, span(1)))
            i, col = i + 1, col + 1
            continue
        if c == '"':
            start_line, start_col = line, col
            j = i + 1
            out = []
            while True:
                if j >= n or text[j] == "\n":
                    raise LexError("unterminated string", span(j - i, start_line, start_col))
                ch = text[j]
                if ch == '"':
                    break
                if ch == "\\":
                    nxt = text[j + 1] if j + 1 < n else ""
                    if nxt not in ESCAPES:
                        raise LexError(f"invalid escape '\\{nxt}'", SourceSpan(file, line, col + (j - i), 2))
                    out.append(ESCAPES[nxt])
                    j += 2
                    continue
                out.append(ch)
                j += 1
            length = j + 1 - i
            tokens.append(Token("STRING", "".join(out), span(length, start_line, start_col)))
            i, col = j + 1, col + length
            continue
        if _ident_start(c) or (c == "$" and i + 1 < n and _ident_start(text[i + 1])):
            j = i + 1
            while j < n and _ident_char(text[j]):
                if text[j] == "-" and text.startswith("->", j):
                    break
                j += 1
            word = text[i:j]
            kind = "ROLE" if c == "$" else "IDENT"
            tokens.append(Token(kind, word, span(j - i)))
            i, col = j, col + (j - i)
            continue
        raise LexError(f"unexpected character {c!r}", span(1))

    tokens.append(Token("EOF", "", span(1)))
    return tokens


def quote(text: str) -> str:
    out = text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\t", "\\t")
    return f'"{out}"'


def is_identifier(word: str) -> bool:
    if not word or not _ident_start(word[0]):
        return False
    if "->" in word:
        return False
    return all(_ident_char(c) for c in word)
