import cmath

from noonqec.fock import SparseState


def to_table(state: SparseState) -> dict:
    return {"".join(map(str, occ)): amp for occ, amp in state}


def max_amplitude_error(state: SparseState, table: dict, up_to_phase: bool = True) -> float:
    """Largest per-amplitude deviation after aligning the global phase on the largest entry."""
    got = to_table(state)
    phase = 1.0
    if up_to_phase:
        ref_key = max(table, key=lambda k: abs(table[k]))
        if ref_key not in got:
            return float("inf")
        phase = cmath.exp(1j * (cmath.phase(table[ref_key]) - cmath.phase(got[ref_key])))
    keys = set(got) | set(table)
    return max(abs(got.get(k, 0) * phase - table.get(k, 0)) for k in keys)
