"""Worst-case instance generators."""

from abcprop.core.gen.evaluate import InstanceCheck, evaluate_instance
from abcprop.core.gen.instance import InstanceSpec
from abcprop.core.gen.party import gen_party_list, party_blocks
from abcprop.core.gen.phragmen import gen_maxphragmen_tie, gen_phragmen_hard
from abcprop.core.gen.seqpav import gen_seqpav_hard
from abcprop.core.gen.thiele import gen_efficiency_witness, gen_thiele_upper_witness

__all__ = [
    "InstanceCheck",
    "InstanceSpec",
    "evaluate_instance",
    "gen_efficiency_witness",
    "gen_maxphragmen_tie",
    "gen_party_list",
    "gen_phragmen_hard",
    "gen_seqpav_hard",
    "gen_thiele_upper_witness",
    "party_blocks",
]
