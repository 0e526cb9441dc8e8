"""Profile text format: ``m=<int>`` header then ``<weight>: <idx> ...`` lines."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from abcprop.core.model.profile import ApprovalProfile
from abcprop.core.utils.errors import ArtifactError, InvalidInputError, ProfileFormatError
from abcprop.core.utils.logging import get_logger
from abcprop.core.utils.numbers import format_rational, parse_rational

logger = get_logger(__name__)


def _parse_header(line: str, line_number: int) -> int:
    key, separator, value = line.partition("=")
    if not separator or key.strip() != "m":
        raise ProfileFormatError(f"expected header 'm=<int>', got '{line}'", line_number)
    try:
        num_candidates = int(value.strip())
    except ValueError as exc:
        raise ProfileFormatError(f"invalid candidate count '{value.strip()}'", line_number) from exc
    if num_candidates < 1:
        raise ProfileFormatError("candidate count must be >= 1", line_number)
    return num_candidates


def _parse_group(
    line: str, line_number: int, num_candidates: int
) -> tuple[Fraction, frozenset[int]]:
    weight_text, separator, indices_text = line.partition(":")
    if not separator:
        raise ProfileFormatError(
            f"malformed line, expected '<weight>: <idx> ...': '{line}'", line_number
        )
    try:
        weight = parse_rational(weight_text)
    except ValueError as exc:
        raise ProfileFormatError(str(exc), line_number) from exc
    if weight <= 0:
        raise ProfileFormatError(f"non-positive weight {format_rational(weight)}", line_number)

    approved: set[int] = set()
    for token in indices_text.split():
        try:
            candidate = int(token)
        except ValueError as exc:
            raise ProfileFormatError(f"invalid candidate index '{token}'", line_number) from exc
        if not 1 <= candidate <= num_candidates:
            raise ProfileFormatError(
                f"candidate index out of range: {candidate} (m={num_candidates})", line_number
            )
        approved.add(candidate)
    return weight, frozenset(approved)


def parse_profile(text: str) -> ApprovalProfile:
    """
    Parse a profile document into its normalized form.

    Args:
        text: Profile document.

    Returns:
        Normalized profile (duplicate approval sets merged).
    """
    num_candidates: int | None = None
    groups: list[tuple[Fraction, frozenset[int]]] = []
    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if num_candidates is None:
            num_candidates = _parse_header(line, line_number)
            continue
        groups.append(_parse_group(line, line_number, num_candidates))

    if num_candidates is None:
        raise ProfileFormatError("missing 'm=<int>' header")
    try:
        return ApprovalProfile.build(num_candidates, groups)
    except InvalidInputError as exc:
        raise ProfileFormatError(str(exc)) from exc


def write_profile(profile: ApprovalProfile) -> str:
    """Render a profile in the text format (no trailing newline)."""
    lines = [f"m={profile.num_candidates}"]
    for group in profile.groups:
        indices = " ".join(str(candidate) for candidate in group.sorted_approved())
        lines.append(f"{format_rational(group.weight)}: {indices}".rstrip())
    return "\n".join(lines)


def read_profile_file(path: Path) -> ApprovalProfile:
    """Read and parse a profile file."""
    resolved_path = path.expanduser().resolve()
    try:
        text = resolved_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ProfileFormatError(f"cannot read profile file {resolved_path}: {exc}") from exc
    profile = parse_profile(text)
    logger.debug(
        "Loaded profile %s: m=%d groups=%d n=%s",
        resolved_path,
        profile.num_candidates,
        len(profile.groups),
        profile.total_weight,
    )
    return profile


def write_profile_file(path: Path, profile: ApprovalProfile) -> Path:
    """Write a profile file, creating parent directories."""
    resolved_path = path.expanduser().resolve()
    try:
        resolved_path.parent.mkdir(parents=True, exist_ok=True)
        resolved_path.write_text(write_profile(profile) + "\n", encoding="utf-8")
    except OSError as exc:
        raise ArtifactError(f"cannot write profile file {resolved_path}: {exc}") from exc
    return resolved_path


def example1_profile() -> ApprovalProfile:
    """Three disjoint parties of ten candidates supported by 60, 30 and 10 voters."""
    return ApprovalProfile.build(
        30,
        [
            (60, range(1, 11)),
            (30, range(11, 21)),
            (10, range(21, 31)),
        ],
    )
