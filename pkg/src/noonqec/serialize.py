"""Text and JSON forms of codes, used by ``dump-code`` and ``--code-file``."""

from __future__ import annotations

import json
from pathlib import Path

from noonqec.codes import Code
from noonqec.errors import InvalidInputError
from noonqec.fock import SparseState, format_state, parse_state

_CODE_HEADER = "# code "
_WORD_HEADER = "# codeword "


def code_to_dict(code: Code) -> dict:
    return {
        "label": code.label,
        "d": code.d,
        "mode_count": code.mode_count,
        "total_photons": code.total_photons,
        "block_structure": list(code.block_structure) if code.block_structure else None,
        "codewords": [
            [{"occupations": list(occ), "re": amp.real, "im": amp.imag} for occ, amp in word]
            for word in code.codewords
        ],
    }


def code_from_dict(data: dict) -> Code:
    try:
        m = int(data["mode_count"])
        words = tuple(
            SparseState(m, {tuple(t["occupations"]): complex(t["re"], t["im"]) for t in word})
            for word in data["codewords"]
        )
        block = data.get("block_structure")
        return Code(
            words,
            str(data.get("label", "custom")),
            tuple(block) if block else None,
            data.get("total_photons"),
        )
    except InvalidInputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed code JSON: {exc}") from exc


def code_to_json(code: Code) -> str:
    return json.dumps(code_to_dict(code), indent=2) + "\n"


def code_to_text(code: Code) -> str:
    parts = [f"{_CODE_HEADER}{code.label}\n"]
    for k, word in enumerate(code.codewords):
        parts.append(f"{_WORD_HEADER}{k}\n")
        parts.append(format_state(word))
    return "".join(parts)


def code_from_text(text: str) -> Code:
    label = "custom"
    chunks: list[list[str]] = []
    for line in text.splitlines():
        if line.startswith(_CODE_HEADER):
            label = line[len(_CODE_HEADER) :].strip() or label
        elif line.startswith(_WORD_HEADER):
            chunks.append([])
        elif chunks:
            chunks[-1].append(line)
        elif line.strip() and not line.lstrip().startswith("#"):
            raise InvalidInputError("state lines before the first '# codeword' header")
    if not chunks:
        raise InvalidInputError("no '# codeword' sections found")
    words = tuple(parse_state("\n".join(chunk)) for chunk in chunks)
    return Code(words, label)


def load_code_file(path: str | Path) -> Code:
    """Read a code in either the JSON or the text dump format."""
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"{path}: {exc}") from exc
        return code_from_dict(data)
    return code_from_text(text)
