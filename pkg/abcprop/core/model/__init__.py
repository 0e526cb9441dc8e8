"""Election data model and profile file format."""

from abcprop.core.model.io import (
    example1_profile,
    parse_profile,
    read_profile_file,
    write_profile,
    write_profile_file,
)
from abcprop.core.model.profile import ApprovalGroup, ApprovalProfile, Committee, VoterGroup

__all__ = [
    "ApprovalGroup",
    "ApprovalProfile",
    "Committee",
    "VoterGroup",
    "example1_profile",
    "parse_profile",
    "read_profile_file",
    "write_profile",
    "write_profile_file",
]
