# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled simulation kernel.

Same contract as ``_kernel_py``: two-phase cycles, fixpoint settle over the
levelized order, per-net resolution of transmission-gate contributions,
post-settle contention sweep, float warnings from the first capture on.
Observable behavior must stay bit-identical to the pure kernel; the parity
test suite runs both over the same programs.
"""

import numpy as np

STATUS_OK = 0
STATUS_CONTENTION = 1
STATUS_OSCILLATION = 2

NAME = "compiled"


def prepare(program):
    return program


cdef int _settle(
    int m,
    int[:] op, int[:] out, int[:] in0, int[:] in1, int[:] aux,
    int[:] goff, int[:] glen, int[:] members,
    signed char[:] val, unsigned char[:] flo,
    signed char[:] cval, unsigned char[:] cflo, signed char[:] dl,
    int max_passes,
) noexcept nogil:
    cdef int pass_no, row, code, o, slot, off, ln, k, ms
    cdef int solid, floater
    cdef signed char v, mv
    cdef unsigned char f
    cdef bint changed

    for pass_no in range(max_passes):
        changed = False
        for row in range(m):
            code = op[row]
            o = out[row]
            if code == 7:  # TGATE
                slot = aux[row]
                if val[in1[row]] == 2:
                    cval[slot] = val[in0[row]]
                    cflo[slot] = flo[in0[row]]
                else:
                    cval[slot] = -1
                    cflo[slot] = 0
                off = goff[slot]
                ln = glen[slot]
                solid = -1
                floater = -1
                for k in range(off, off + ln):
                    ms = members[k]
                    mv = cval[ms]
                    if mv < 0:
                        continue
                    if cflo[ms]:
                        if floater < 0:
                            floater = mv
                    elif solid < 0:
                        solid = mv
                if solid >= 0:
                    v = <signed char> solid
                    f = 0
                elif floater >= 0:
                    v = <signed char> floater
                    f = 1
                else:
                    v = val[o]
                    f = 1
            elif code == 8:  # DLATCH
                if val[in1[row]] == 2:
                    v = val[in0[row]]
                    dl[aux[row]] = v
                else:
                    v = dl[aux[row]]
                f = 0
            elif code == 1:  # NTI
                v = 2 if val[in0[row]] == 0 else 0
                f = 0
            elif code == 2:  # PTI
                v = 2 if val[in0[row]] != 2 else 0
                f = 0
            elif code == 3:  # STI
                v = 2 - val[in0[row]]
                f = 0
            elif code == 4:  # BIN_INV
                v = 0 if val[in0[row]] == 2 else 2
                f = 0
            elif code == 5:  # BIN_AND
                v = 2 if (val[in0[row]] == 2 and val[in1[row]] == 2) else 0
                f = 0
            elif code == 6:  # BIN_OR
                v = 2 if (val[in0[row]] == 2 or val[in1[row]] == 2) else 0
                f = 0
            else:  # CONST
                v = <signed char> aux[row]
                f = 0
            if val[o] != v or flo[o] != f:
                val[o] = v
                flo[o] = f
                changed = True
        if not changed:
            return max_passes - pass_no
    return 0


cdef int _check_contention(
    int n_slots,
    int[:] tg_net, int[:] goff, int[:] glen, int[:] members,
    signed char[:] cval, unsigned char[:] cflo,
) noexcept nogil:
    cdef int slot, k, ms, solid
    cdef signed char mv
    for slot in range(n_slots):
        if glen[slot] < 2 or members[goff[slot]] != slot:
            continue
        solid = -1
        for k in range(goff[slot], goff[slot] + glen[slot]):
            ms = members[k]
            mv = cval[ms]
            if mv < 0 or cflo[ms]:
                continue
            if solid < 0:
                solid = mv
            elif solid != mv:
                return tg_net[slot]
    return -1


def run(p, s, stim, samples, warn_rows):
    """See ``_kernel_py.run``; identical contract."""
    cdef int n_nets = p.n_nets
    cdef int clock_net = p.clock_net
    cdef int max_passes = p.max_passes

    cdef int[:] op = p.op
    cdef int[:] out = p.out
    cdef int[:] in0 = p.in0
    cdef int[:] in1 = p.in1
    cdef int[:] aux = p.aux
    cdef int[:] tg_net = p.tg_net
    cdef int[:] goff = p.tg_group_off
    cdef int[:] glen = p.tg_group_len
    cdef int[:] members = p.tg_members
    cdef int[:, :] tlg_in = p.tlg_in
    cdef int[:, :] tlg_out = p.tlg_out
    cdef int[:, :] tlg_w = p.tlg_w
    cdef int[:] in_nets = p.in_nets
    cdef unsigned char[:] sensed = p.sensed

    cdef signed char[:] val = s.val
    cdef unsigned char[:] flo = s.flo
    cdef signed char[:] cval = s.contrib_val
    cdef unsigned char[:] cflo = s.contrib_flo
    cdef signed char[:] dl = s.dl_state
    cdef signed char[:] tlg_state = s.tlg_state
    cdef unsigned char[:] tlg_evald = s.tlg_evald
    cdef unsigned char[:] float_seen = s.float_seen

    cdef signed char[:, :] stim_v = stim
    cdef bint collect = samples is not None
    if not collect:
        samples = np.zeros((1, 1), dtype=np.int8)
    cdef signed char[:, :] samp = samples
    cdef int[:, :] warn = warn_rows

    cdef int m = op.shape[0]
    cdef int n_slots = tg_net.shape[0]
    cdef int n_tlg = tlg_w.shape[0]
    cdef int n_in = in_nets.shape[0]
    cdef int n_cycles = stim_v.shape[0]
    cdef int warn_cap = warn.shape[0]

    cdef int cycle, phase, i, g, net, row_idx, bad
    cdef int n_warn = 0
    cdef long long delta
    cdef signed char ov

    with nogil:
        for cycle in range(n_cycles):
            for phase in range(2):  # 0 = clock high, 1 = clock low
                if phase == 0:
                    if clock_net >= 0:
                        val[clock_net] = 2
                        flo[clock_net] = 0
                    for i in range(n_in):
                        val[in_nets[i]] = stim_v[cycle, i]
                        flo[in_nets[i]] = 0
                else:
                    if clock_net >= 0:
                        val[clock_net] = 0
                    for g in range(n_tlg):
                        delta = (
                            tlg_w[g, 0] * val[tlg_in[g, 0]]
                            + tlg_w[g, 1] * val[tlg_in[g, 1]]
                            - tlg_w[g, 2] * val[tlg_in[g, 2]]
                            - tlg_w[g, 3] * val[tlg_in[g, 3]]
                        )
                        tlg_state[g] = 2 if delta >= 0 else 0
                        tlg_evald[g] = 1
                for g in range(n_tlg):
                    ov = tlg_state[g]
                    val[tlg_out[g, 0]] = ov
                    flo[tlg_out[g, 0]] = 0
                    val[tlg_out[g, 1]] = 2 - ov
                    flo[tlg_out[g, 1]] = 0

                if _settle(m, op, out, in0, in1, aux, goff, glen, members,
                           val, flo, cval, cflo, dl, max_passes) == 0:
                    with gil:
                        return (STATUS_OSCILLATION, -1, cycle * 2 + phase, n_warn)
                bad = _check_contention(n_slots, tg_net, goff, glen, members,
                                        cval, cflo)
                if bad >= 0:
                    with gil:
                        return (STATUS_CONTENTION, bad, cycle * 2 + phase, n_warn)

                if cycle > 0 or phase > 0:
                    for net in range(n_nets):
                        if flo[net] and sensed[net]:
                            float_seen[net] = 1
                            if n_warn < warn_cap:
                                warn[n_warn, 0] = cycle
                                warn[n_warn, 1] = phase
                                warn[n_warn, 2] = net
                            n_warn += 1

                if collect:
                    row_idx = cycle * 2 + phase
                    for net in range(n_nets):
                        samp[row_idx, net] = 3 if flo[net] else val[net]

    return (STATUS_OK, -1, -1, n_warn)
