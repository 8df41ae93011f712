"""Reading and writing the plain-text preference list format.

Format::

    # comments run to end of line, blank lines are ignored
    a b c d          <- universe header, fixes index order
    a b              <- most preferred member
    a c d
    -                <- the empty set

A header of ``-`` declares the empty universe.
"""
import logging
from pathlib import Path
from typing import Iterable, List, Tuple, Union

from pydantic import ValidationError

from subcheck.core.errors import ListParseError
from subcheck.models import PreferenceList, Universe
from subcheck.services.choice_service import normalize

logger = logging.getLogger(__name__)

EMPTY_TOKEN = "-"
COMMENT_CHAR = "#"


def _content_lines(text: str) -> Iterable[Tuple[int, List[str]]]:
    for line_no, line in enumerate(text.splitlines(), start=1):
        content = line.split(COMMENT_CHAR, 1)[0]
        tokens = content.split()
        if tokens:
            yield line_no, tokens


class ListFileService:
    """Parse and serialize preference list files."""

    def parse(self, text: str, source: str = "<string>") -> PreferenceList:
        """Parse file contents into a normalized preference list."""
        lines = _content_lines(text)
        try:
            header_no, header = next(lines)
        except StopIteration:
            raise ListParseError("missing universe header", None, source)

        if header == [EMPTY_TOKEN]:
            header = []
        try:
            universe = Universe(alternatives=tuple(header))
        except ValidationError as e:
            raise ListParseError(f"bad universe header: {e.errors()[0]['msg']}", header_no, source)

        masks = []
        for line_no, tokens in lines:
            if tokens == [EMPTY_TOKEN]:
                masks.append(0)
                continue
            mask = 0
            for name in tokens:
                if name == EMPTY_TOKEN:
                    raise ListParseError("'-' must stand alone on a member line", line_no, source)
                if name not in universe:
                    raise ListParseError(f"unknown alternative {name!r}", line_no, source)
                bit = 1 << universe.index(name)
                if mask & bit:
                    raise ListParseError(f"duplicate alternative {name!r}", line_no, source)
                mask |= bit
            masks.append(mask)

        plist = normalize(masks, universe)
        logger.debug(
            f"Parsed {source}: m={universe.m} n={plist.n} empty_appended={plist.empty_appended}"
        )
        return plist

    def read(self, path: Union[str, Path]) -> PreferenceList:
        """Read a list file; I/O failures propagate as OSError."""
        path = Path(path)
        data = path.read_bytes()
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as e:
            line_no = data.count(b"\n", 0, e.start) + 1
            raise ListParseError(f"not valid UTF-8 (byte 0x{data[e.start]:02x})", line_no, str(path)) from e
        return self.parse(text, source=str(path))

    def format(self, plist: PreferenceList, comments: Iterable[str] = ()) -> str:
        """
        Serialize a list. A trailing empty set that normalization appended is
        left out, so parsing the output reproduces the list exactly.
        """
        universe = plist.universe
        out = [f"{COMMENT_CHAR} {comment}" for comment in comments]
        out.append(" ".join(universe.alternatives) if universe.m else EMPTY_TOKEN)
        masks = plist.masks
        if plist.empty_appended and masks and masks[-1] == 0:
            masks = masks[:-1]
        for mask in masks:
            out.append(" ".join(universe.names_of(mask)) if mask else EMPTY_TOKEN)
        return "\n".join(out) + "\n"

    def write(self, path: Union[str, Path], plist: PreferenceList, comments: Iterable[str] = ()) -> None:
        path = Path(path)
        if path.parent and not path.parent.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.format(plist, comments), encoding="utf-8")
        logger.info(f"Wrote {plist.n} members to {path}")


# Global list file service instance
listfile_service = ListFileService()
