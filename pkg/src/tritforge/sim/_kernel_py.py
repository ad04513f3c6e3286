"""Pure-Python simulation kernel.

Reference implementation of the cycle loop; the compiled Cython kernel in
``_kernel.pyx`` implements exactly the same contract and must stay
bit-identical in observable behavior.  Each clock cycle runs a clock-high
settle, the falling-edge capture of every threshold gate, and a clock-low
settle.  Settling iterates the levelized instance order to a fixed point
over net values; transmission-gate contributions are resolved per driven
net (first active solid contribution wins during iteration, contention is
checked after convergence).

Float (all-drivers-off) warnings are collected at the end of every settled
phase except the power-on clock-high phase of cycle 0, where clocked TLG
outputs legitimately precede their first capture.
"""

from __future__ import annotations

STATUS_OK = 0
STATUS_CONTENTION = 1
STATUS_OSCILLATION = 2

NAME = "python"

_OP_TGATE = 7
_OP_DLATCH = 8


class _Prepared:
    """Program arrays converted to plain lists for fast scalar access."""

    def __init__(self, p):
        self.n_nets = p.n_nets
        self.clock_net = p.clock_net
        self.max_passes = p.max_passes
        self.op = p.op.tolist()
        self.out = p.out.tolist()
        self.in0 = p.in0.tolist()
        self.in1 = p.in1.tolist()
        self.aux = p.aux.tolist()
        self.tg_net = p.tg_net.tolist()
        self.tg_group_off = p.tg_group_off.tolist()
        self.tg_group_len = p.tg_group_len.tolist()
        self.tg_members = p.tg_members.tolist()
        self.tlg_in = p.tlg_in.tolist()
        self.tlg_out = p.tlg_out.tolist()
        self.tlg_w = p.tlg_w.tolist()
        self.in_nets = p.in_nets.tolist()
        self.sensed = p.sensed.tolist()


def prepare(program):
    return _Prepared(program)


def _settle(k, val, flo, cval, cflo, dl, max_passes):
    """Iterate to fixpoint; returns remaining pass budget (0 = oscillation)."""
    op = k.op
    out = k.out
    in0 = k.in0
    in1 = k.in1
    aux = k.aux
    goff = k.tg_group_off
    glen = k.tg_group_len
    members = k.tg_members
    m = len(op)

    for pass_no in range(max_passes):
        changed = False
        for row in range(m):
            code = op[row]
            o = out[row]
            if code == _OP_TGATE:
                slot = aux[row]
                if val[in1[row]] == 2:
                    cval[slot] = val[in0[row]]
                    cflo[slot] = flo[in0[row]]
                else:
                    cval[slot] = -1
                    cflo[slot] = 0
                off = goff[slot]
                solid = -1
                floater = -1
                for k2 in range(off, off + glen[slot]):
                    ms = members[k2]
                    mv = cval[ms]
                    if mv < 0:
                        continue
                    if cflo[ms]:
                        if floater < 0:
                            floater = mv
                    elif solid < 0:
                        solid = mv
                if solid >= 0:
                    v = solid
                    f = 0
                elif floater >= 0:
                    v = floater
                    f = 1
                else:
                    v = val[o]
                    f = 1
            elif code == _OP_DLATCH:
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
                v = aux[row]
                f = 0
            if val[o] != v or flo[o] != f:
                val[o] = v
                flo[o] = f
                changed = True
        if not changed:
            return max_passes - pass_no
    return 0


def _check_contention(k, cval, cflo):
    """Post-settle sweep: two solid active contributions must agree."""
    goff = k.tg_group_off
    glen = k.tg_group_len
    members = k.tg_members
    for slot in range(len(k.tg_net)):
        if glen[slot] < 2 or members[goff[slot]] != slot:
            continue  # each group is swept once, via its first member
        solid = -1
        for k2 in range(goff[slot], goff[slot] + glen[slot]):
            ms = members[k2]
            mv = cval[ms]
            if mv < 0 or cflo[ms]:
                continue
            if solid < 0:
                solid = mv
            elif solid != mv:
                return k.tg_net[slot]
    return -1


def run(k, s, stim, samples, warn_rows):
    """Simulate ``len(stim)`` cycles against prepared program ``k``.

    Returns ``(status, err_net, err_pos, n_float_warnings)`` where
    ``err_pos`` encodes cycle*2+phase.  ``samples``, when not None, receives
    one row per phase with net values (3 marks a floating net).  Float
    warnings are appended to ``warn_rows`` as (cycle, phase, net) while
    capacity lasts; the returned count is exact.
    """
    val = s.val.tolist()
    flo = s.flo.tolist()
    cval = s.contrib_val.tolist()
    cflo = s.contrib_flo.tolist()
    dl = s.dl_state.tolist()
    tlg_state = s.tlg_state.tolist()
    tlg_evald = s.tlg_evald.tolist()
    float_seen = s.float_seen.tolist()

    stim_rows = stim.tolist()
    sensed = k.sensed
    in_nets = k.in_nets
    tlg_w = k.tlg_w
    tlg_in = k.tlg_in
    tlg_out = k.tlg_out
    n_tlg = len(tlg_w)
    n_warn = 0
    warn_cap = len(warn_rows)
    status = STATUS_OK
    err_a = -1
    err_b = -1

    try:
        for cycle in range(len(stim_rows)):
            for phase in range(2):  # 0 = clock high, 1 = clock low
                if phase == 0:
                    if k.clock_net >= 0:
                        val[k.clock_net] = 2
                        flo[k.clock_net] = 0
                    row = stim_rows[cycle]
                    for i, net in enumerate(in_nets):
                        val[net] = row[i]
                        flo[net] = 0
                else:
                    if k.clock_net >= 0:
                        val[k.clock_net] = 0
                    for g in range(n_tlg):
                        w = tlg_w[g]
                        nets = tlg_in[g]
                        delta = (
                            w[0] * val[nets[0]]
                            + w[1] * val[nets[1]]
                            - w[2] * val[nets[2]]
                            - w[3] * val[nets[3]]
                        )
                        tlg_state[g] = 2 if delta >= 0 else 0
                        tlg_evald[g] = 1
                for g in range(n_tlg):
                    ov = tlg_state[g]
                    outs = tlg_out[g]
                    val[outs[0]] = ov
                    flo[outs[0]] = 0
                    val[outs[1]] = 2 - ov
                    flo[outs[1]] = 0

                if _settle(k, val, flo, cval, cflo, dl, k.max_passes) == 0:
                    status = STATUS_OSCILLATION
                    err_b = cycle * 2 + phase
                    return (status, err_a, err_b, n_warn)
                bad = _check_contention(k, cval, cflo)
                if bad >= 0:
                    status = STATUS_CONTENTION
                    err_a = bad
                    err_b = cycle * 2 + phase
                    return (status, err_a, err_b, n_warn)

                if cycle > 0 or phase > 0:
                    for net in range(k.n_nets):
                        if flo[net] and sensed[net]:
                            float_seen[net] = 1
                            if n_warn < warn_cap:
                                warn_rows[n_warn][0] = cycle
                                warn_rows[n_warn][1] = phase
                                warn_rows[n_warn][2] = net
                            n_warn += 1

                if samples is not None:
                    samples[cycle * 2 + phase] = [
                        3 if flo[net] else val[net] for net in range(k.n_nets)
                    ]
        return (STATUS_OK, -1, -1, n_warn)
    finally:
        s.val[:] = val
        s.flo[:] = flo
        s.contrib_val[:] = cval
        s.contrib_flo[:] = cflo
        s.dl_state[:] = dl
        s.tlg_state[:] = tlg_state
        s.tlg_evald[:] = tlg_evald
        s.float_seen[:] = float_seen
