"""
Field-tagged bibliographic export parser.

Reads the classic field-tagged plain-text export format (Web of Science
style): a 2-letter tag in columns 1-2, the value starting at column 4,
continuation lines indented with 3 spaces. Records open at PT and close
at ER; the file ends at EF. Tags of interest:

  UT  accession / unique id          AU  authors (one per line)
  PY  publication year               TI  title
  AB  abstract                       SO  source journal
  DE  author keywords (;-separated)  ID  database keywords (;-separated)
  DT  document type                  CR  cited references (one per line)

Everything else is ignored. Multi-line values are joined with single
spaces, except CR where every line is one cited reference.

Cited-reference lines are comma-separated: author, year, source, then
optional "V<n>", "P<p>" and "DOI ..." segments in any order. Malformed
CR lines (fewer than two segments) are skipped and counted in the
provenance, never fatal.

A line-delimited JSON format (one record object per line, field names
uid/authors/year/title/abstract/index_terms/source/doc_type/cited_refs)
is supported for synthetic corpora; see `read_records_jsonl`.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

__all__ = [
    "CitedReference",
    "Record",
    "Provenance",
    "RecordSet",
    "ParseError",
    "MalformedReferenceError",
    "normalize_author",
    "parse_cited_reference",
    "parse_wos_file",
    "parse_wos_path",
    "merge_record_sets",
    "parse_records_jsonl",
    "read_records_jsonl",
    "write_records_jsonl",
]

DOC_TYPES = ("article", "review", "other")

YEAR_MIN = 1900
YEAR_MAX = 2100


class ParseError(Exception):
    """Fatal parse failure (unreadable header, empty range, ...)."""


class MalformedReferenceError(ValueError):
    """A cited-reference line that cannot be parsed at all."""


def normalize_author(raw: str) -> str:
    """Normalize a raw author string to an uppercased first-author key.

    "Kuhlthau, C. C.", "KUHLTHAU CC" and "Kuhlthau, CC" all map to
    "KUHLTHAU CC". Surname particles are collapsed into the surname
    ("van Rijsbergen, C.J." -> "VANRIJSBERGEN CJ"), matching the
    collapsed keys bibliographic databases print.
    """
    if not raw or not raw.strip():
        raise ValueError("empty author string")
    text = raw.strip().replace(".", " ")
    if "," in text:
        surname_part, _, given_part = text.partition(",")
        surname = "".join(surname_part.split()).upper()
        initials = _initials(given_part.split())
    else:
        tokens = text.split()
        if len(tokens) == 1:
            surname, initials = tokens[0].upper(), ""
        else:
            surname = "".join(tokens[:-1]).upper()
            initials = _initials(tokens[-1:])
    key = f"{surname} {initials}".strip()
    return re.sub(r"\s+", " ", key)


def _initials(tokens: list[str]) -> str:
    # An all-caps token is an initials block ("CC", "CJ"); anything else
    # (mixed case, e.g. "Ann") contributes its first letter.
    parts = []
    for tok in tokens:
        tok = tok.strip("-")
        if not tok:
            continue
        if tok.isupper():
            parts.append(tok)
        else:
            parts.append(tok[0].upper())
    return "".join(parts)


@dataclass(frozen=True)
class CitedReference:
    """One cited reference, keyed by first author."""

    author_key: str
    year: int | None
    source: str
    volume: int | None
    page: str | None
    ref_key: str

    @classmethod
    def make(
        cls,
        author_key: str,
        year: int | None,
        source: str = "",
        volume: int | None = None,
        page: str | None = None,
    ) -> "CitedReference":
        ref_key = "_".join(
            [
                author_key,
                "" if year is None else str(year),
                source,
                "V" if volume is None else f"V{volume}",
                "P" if page is None else f"P{page}",
            ]
        )
        return cls(author_key, year, source, volume, page, ref_key)

    def as_cr_line(self) -> str:
        """Render back to a CR-style line (inverse of parse_cited_reference).

        An unknown year keeps its position as the non-numeric token
        "[no year]" so the rendered line re-parses to the same fields.
        """
        segments = [self.author_key]
        segments.append(str(self.year) if self.year is not None else "[no year]")
        if self.source:
            segments.append(self.source)
        if self.volume is not None:
            segments.append(f"V{self.volume}")
        if self.page is not None:
            segments.append(f"P{self.page}")
        return ", ".join(segments)

    def to_json(self) -> dict:
        return {
            "author_key": self.author_key,
            "year": self.year,
            "source": self.source,
            "volume": self.volume,
            "page": self.page,
            "ref_key": self.ref_key,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CitedReference":
        return cls.make(
            obj["author_key"],
            obj.get("year"),
            obj.get("source", ""),
            obj.get("volume"),
            obj.get("page"),
        )


_VOLUME_RE = re.compile(r"^V(\d+)$")
_PAGE_RE = re.compile(r"^P(\S+)$")
_DOI_RE = re.compile(r"^DOI\b")


def parse_cited_reference(line: str) -> CitedReference:
    """Parse one CR line into a CitedReference.

    Raises MalformedReferenceError when the line has fewer than two
    comma-separated segments. A non-numeric year segment yields an
    unknown year, not an error.
    """
    segments = [seg.strip() for seg in line.split(",")]
    segments = [seg for seg in segments if seg]
    if len(segments) < 2:
        raise MalformedReferenceError(f"cited reference too short: {line!r}")
    author_key = normalize_author(segments[0])
    year: int | None
    try:
        year = int(segments[1])
    except ValueError:
        year = None
    source = ""
    volume: int | None = None
    page: str | None = None
    rest = segments[2:]
    if rest and not (_VOLUME_RE.match(rest[0]) or _PAGE_RE.match(rest[0]) or _DOI_RE.match(rest[0])):
        source = rest[0].upper()
        rest = rest[1:]
    for seg in rest:
        m = _VOLUME_RE.match(seg)
        if m and volume is None:
            volume = int(m.group(1))
            continue
        m = _PAGE_RE.match(seg)
        if m and page is None:
            page = m.group(1)
            continue
        # DOI and any other trailing segments are ignored.
    return CitedReference.make(author_key, year, source, volume, page)


@dataclass(frozen=True)
class Record:
    """One citing publication."""

    uid: str
    authors: tuple[str, ...]
    year: int | None
    title: str
    abstract: str
    index_terms: tuple[str, ...]
    source: str
    doc_type: str
    cited_refs: tuple[CitedReference, ...]

    def __post_init__(self):
        if not self.uid:
            raise ValueError("record uid must be non-empty")
        if self.year is not None and not (YEAR_MIN <= self.year <= YEAR_MAX):
            raise ValueError(f"record year {self.year} outside [{YEAR_MIN}, {YEAR_MAX}]")
        if self.doc_type not in DOC_TYPES:
            raise ValueError(f"unknown doc_type {self.doc_type!r}")

    def to_json(self) -> dict:
        return {
            "uid": self.uid,
            "authors": list(self.authors),
            "year": self.year,
            "title": self.title,
            "abstract": self.abstract,
            "index_terms": list(self.index_terms),
            "source": self.source,
            "doc_type": self.doc_type,
            "cited_refs": [ref.to_json() for ref in self.cited_refs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Record":
        refs = []
        for entry in obj.get("cited_refs", ()):
            if isinstance(entry, str):
                refs.append(parse_cited_reference(entry))
            else:
                refs.append(CitedReference.from_json(entry))
        return cls(
            uid=obj["uid"],
            authors=tuple(obj.get("authors", ())),
            year=obj.get("year"),
            title=obj.get("title", ""),
            abstract=obj.get("abstract", ""),
            index_terms=tuple(obj.get("index_terms", ())),
            source=obj.get("source", ""),
            doc_type=obj.get("doc_type", "other"),
            cited_refs=tuple(refs),
        )


@dataclass(frozen=True)
class Provenance:
    files: tuple[str, ...] = ()
    records_read: int = 0
    records_rejected: int = 0
    lines_skipped: int = 0
    malformed_cr_lines: int = 0

    def to_json(self) -> dict:
        return {
            "files": list(self.files),
            "records_read": self.records_read,
            "records_rejected": self.records_rejected,
            "lines_skipped": self.lines_skipped,
            "malformed_cr_lines": self.malformed_cr_lines,
        }


@dataclass(frozen=True)
class RecordSet:
    records: tuple[Record, ...]
    provenance: Provenance = field(default_factory=Provenance)

    def __post_init__(self):
        uids = [r.uid for r in self.records]
        if len(uids) != len(set(uids)):
            dupes = sorted({u for u in uids if uids.count(u) > 1})
            raise ValueError(f"duplicate record uids: {dupes}")

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


def _map_doc_type(raw: str) -> str:
    value = raw.strip().lower()
    if value == "article":
        return "article"
    if value == "review":
        return "review"
    return "other"


_TAG_RE = re.compile(r"^([A-Z][A-Z0-9])( |$)")


def parse_wos_file(text: str, filename: str = "<string>") -> RecordSet:
    """Parse a full field-tagged export into a RecordSet.

    Raises ParseError when the file does not start with a recognizable
    header (an FN/VR preamble or a PT record opener).
    """
    lines = text.splitlines()
    first = next((ln for ln in lines if ln.strip()), None)
    if first is None or not (first.startswith("FN") or first.startswith("PT")):
        raise ParseError(f"{filename}: unrecognizable export header")

    stem = Path(filename).stem
    records: list[Record] = []
    records_rejected = 0
    lines_skipped = 0
    malformed_cr = 0

    in_record = False
    ordinal = 0
    fields: dict[str, list[str]] = {}
    cr_lines: list[str] = []
    current_tag = ""

    def close_record():
        nonlocal records_rejected, malformed_cr
        if not fields and not cr_lines:
            records_rejected += 1
            return
        uid = " ".join(fields.get("UT", [])).strip()
        if not uid:
            uid = f"GEN-{stem}-{ordinal}"
        year: int | None
        try:
            year = int(" ".join(fields.get("PY", [])).strip())
        except ValueError:
            year = None
        if year is not None and not (YEAR_MIN <= year <= YEAR_MAX):
            year = None
        refs = []
        for raw in cr_lines:
            try:
                refs.append(parse_cited_reference(raw))
            except MalformedReferenceError:
                malformed_cr += 1
        index_terms = _split_terms(fields.get("DE", [])) + _split_terms(fields.get("ID", []))
        try:
            records.append(
                Record(
                    uid=uid,
                    authors=tuple(fields.get("AU", [])),
                    year=year,
                    title=" ".join(fields.get("TI", [])),
                    abstract=" ".join(fields.get("AB", [])),
                    index_terms=tuple(index_terms),
                    source=" ".join(fields.get("SO", [])),
                    doc_type=_map_doc_type(" ".join(fields.get("DT", []))),
                    cited_refs=tuple(refs),
                )
            )
        except ValueError:
            records_rejected += 1

    for line in lines:
        if line.strip() == "EF":
            break
        if not line.strip():
            current_tag = ""
            continue
        m = _TAG_RE.match(line)
        if m:
            tag = m.group(1)
            value = line[3:] if len(line) > 3 else ""
            if tag == "PT":
                in_record = True
                ordinal += 1
                fields = {}
                cr_lines = []
                current_tag = ""
                continue
            if tag == "ER":
                if in_record:
                    close_record()
                in_record = False
                current_tag = ""
                continue
            if not in_record:
                # FN / VR preamble and stray tags outside records.
                current_tag = ""
                continue
            current_tag = tag
            if tag == "CR":
                cr_lines.append(value)
            elif tag in ("UT", "AU", "PY", "TI", "AB", "DE", "ID", "SO", "DT"):
                fields.setdefault(tag, []).append(value.strip())
            continue
        if line.startswith("   ") and in_record and current_tag:
            value = line[3:]
            if current_tag == "CR":
                cr_lines.append(value)
            elif current_tag == "AU":
                fields.setdefault("AU", []).append(value.strip())
            elif current_tag in fields:
                fields[current_tag].append(value.strip())
            continue
        lines_skipped += 1

    provenance = Provenance(
        files=(filename,),
        records_read=len(records),
        records_rejected=records_rejected,
        lines_skipped=lines_skipped,
        malformed_cr_lines=malformed_cr,
    )
    return RecordSet(tuple(records), provenance)


def _split_terms(chunks: list[str]) -> list[str]:
    terms = []
    for part in " ".join(chunks).split(";"):
        part = part.strip()
        if part:
            terms.append(part)
    return terms


def parse_wos_path(path: str | Path) -> RecordSet:
    """Read and parse one export file (UTF-8, lossy on invalid bytes)."""
    path = Path(path)
    text = path.read_text(encoding="utf-8", errors="replace")
    return parse_wos_file(text, filename=path.name)


def merge_record_sets(sets: Iterable[RecordSet]) -> RecordSet:
    """Concatenate several parsed files into one RecordSet."""
    records: list[Record] = []
    files: list[str] = []
    read = rejected = skipped = malformed = 0
    for rs in sets:
        records.extend(rs.records)
        files.extend(rs.provenance.files)
        read += rs.provenance.records_read
        rejected += rs.provenance.records_rejected
        skipped += rs.provenance.lines_skipped
        malformed += rs.provenance.malformed_cr_lines
    return RecordSet(
        tuple(records),
        Provenance(tuple(files), read, rejected, skipped, malformed),
    )


def parse_records_jsonl(text: str, name: str = "<jsonl>") -> RecordSet:
    """Parse line-delimited JSON records; cited_refs entries may be
    objects or raw CR-line strings."""
    records = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        records.append(Record.from_json(json.loads(line)))
    provenance = Provenance(files=(name,), records_read=len(records))
    return RecordSet(tuple(records), provenance)


def read_records_jsonl(path: str | Path) -> RecordSet:
    """Read the line-delimited JSON record format from a file."""
    path = Path(path)
    return parse_records_jsonl(path.read_text(encoding="utf-8"), name=path.name)


def write_records_jsonl(rs: RecordSet, path: str | Path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for record in rs.records:
            fh.write(json.dumps(record.to_json(), ensure_ascii=False, sort_keys=True))
            fh.write("\n")
