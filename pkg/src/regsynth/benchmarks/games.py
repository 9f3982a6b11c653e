"""The nine benchmark games.

Every generator returns a :class:`~regsynth.game.RegularSafetyGame`; the
layout of each word is documented in the catalog entry of the game.  Two
robots on a grid share a cell alphabet of bit pairs: the first bit belongs to
Player 0's robot, the second to Player 1's.  A coordinate is a thermometer
code ``1^c 0^*`` on its track, so a move by one step flips a single bit.
Transducers may therefore be loose (flip *any* bit), because a move is only a
move when its target is a vertex.
"""

from .. import automata
from ..game import RegularSafetyGame
from .build import Grammar, alt, bit_cells, flip, opt, power, seq, star

CELLS = bit_cells(2)


def _thermometer(cells, tracks):
    """Step function accepting sequences of ``cells`` that are ``1*0*`` on every track."""

    def step(state, name):
        if name not in cells:
            return None
        bits = tuple(name[t] == "1" for t in range(tracks))
        if any(z and b for z, b in zip(state, bits)):
            return None
        return tuple(z or not b for z, b in zip(state, bits))

    return step


def _game(gr, v0, v1, edges, initial, bad, name):
    intersect = automata.intersect
    vertices = automata.union(v0, v1)
    g = RegularSafetyGame(
        gr.alphabet, v0, v1, edges,
        automata.minimize(intersect(initial, vertices)),
        automata.minimize(intersect(bad, vertices)),
        name=name)
    return g.check_well_formed()


# -- two robots on a grid ------------------------------------------------------

def _grid(turns):
    """Alphabet and the turn-free tail ``x cells · S · y cells`` shared by the two-robot games."""
    gr = Grammar(CELLS + ["S"] + [t for t in turns if t not in CELLS])
    thermo = _thermometer(CELLS, 2)

    def step(state, name):
        phase, z = state
        if name == "S":
            return ("y", (False, False)) if phase == "x" else None
        z2 = thermo(z, name)
        return None if z2 is None else (phase, z2)

    return gr, gr.machine(("x", (False, False)), step, lambda s: s[0] == "y")


def _prefixed(gr, turn, tail):
    """``turn · L(tail)`` as a minimal DFA."""
    head = gr.dfa(gr.sym(turn))
    return _concat(head, tail)


def _flips(gr, track):
    return gr.pair(*((c, flip(c, track)) for c in CELLS))


def _step_moves(gr, track, king):
    """Cell rewrites moving the robot on ``track`` by one step (or not at all).

    With ``king`` each axis may change by one; otherwise at most one axis does.
    """
    ident = star(gr.keep(*CELLS))
    f = _flips(gr, track)
    sep = gr.keep("S")
    if king:
        return seq(ident, opt(seq(f, ident)), sep, ident, opt(seq(f, ident)))
    return alt(seq(ident, sep, ident),
               seq(ident, f, ident, sep, ident),
               seq(ident, sep, ident, f, ident))


def _mismatches_at_least(gr, k):
    """Words whose cells disagree between the two tracks in at least ``k`` positions."""
    def step(count, name):
        return min(k, count + (name in ("01", "10")))

    return gr.machine(0, step, lambda c: c >= k)


def _coinciding(gr):
    """Words in which the two tracks agree everywhere past the first symbol."""
    same = star(gr.sym("00", "11", "S"))
    return gr.dfa(seq(gr.sym(*gr.alphabet.symbols), same))


def grid_world():
    """The grid-world layout: turn vector ``00``/``11``, x cells, ``S``, y cells."""
    gr = Grammar(CELLS + ["S"])
    cell = gr.sym(*CELLS)
    return gr.dfa(seq(gr.sym("11", "00"), star(cell), gr.sym("S"), star(cell)))


def follow():
    gr, tail = _grid(["00", "11"])
    v0, v1 = _prefixed(gr, "00", tail), _prefixed(gr, "11", tail)
    p0 = seq(gr.pair("00/11"), _step_moves(gr, 0, king=False))
    p1 = seq(gr.pair("11/00"), _step_moves(gr, 1, king=False))
    edges = gr.relation(alt(p0, p1))
    initial = automata.intersect(v1, _coinciding(gr))
    bad = _mismatches_at_least(gr, 3)
    return _game(gr, v0, v1, edges, initial, bad, "follow")


def robot_vacuum():
    gr, tail = _grid(["00", "11"])
    v0, v1 = _prefixed(gr, "00", tail), _prefixed(gr, "11", tail)
    ident = star(gr.keep(*CELLS, "S"))
    mismatch = gr.keep("01", "10")
    robot_moves = alt(
        seq(ident, _flips(gr, 0), ident),
        seq(ident, mismatch, ident))            # staying put is only allowed apart from the human
    p0 = seq(gr.pair("00/11"), robot_moves)
    p1 = seq(gr.pair("11/00"), _step_moves(gr, 1, king=False))
    edges = gr.relation(alt(p0, p1))
    coinciding = _coinciding(gr)
    initial = automata.difference(v0, coinciding)
    bad = automata.intersect(v1, coinciding)
    return _game(gr, v0, v1, edges, initial, bad, "robot-vacuum")


def evasion():
    gr, tail = _grid(["00", "11", "E"])
    v0 = automata.minimize(automata.union(_prefixed(gr, "00", tail), _prefixed(gr, "E", tail)))
    v1 = _prefixed(gr, "11", tail)
    ident = star(gr.keep(*CELLS))
    sep = gr.keep("S")
    low = star(gr.keep("00", "01"))               # Player 0's track all zero: lowest coordinate
    high = star(gr.keep("10", "11"))              # all one: highest coordinate
    escape = seq(gr.pair("00/E"), alt(seq(alt(low, high), sep, ident),
                                      seq(ident, sep, alt(low, high))))
    stay_out = seq(gr.keep("E"), ident, sep, ident)
    p0 = seq(gr.pair("00/11"), _step_moves(gr, 0, king=True))
    p1 = seq(gr.pair("11/00"), _step_moves(gr, 1, king=True))
    edges = gr.relation(alt(p0, p1, escape, stay_out))
    coinciding = _coinciding(gr)
    on_grid = automata.union(_prefixed(gr, "00", tail), v1)
    initial = automata.difference(_prefixed(gr, "00", tail), coinciding)
    bad = automata.intersect(on_grid, coinciding)
    return _game(gr, v0, v1, edges, initial, bad, "evasion")


# -- one robot ----------------------------------------------------------------

def diagonal():
    gr = Grammar(["t0", "t1"] + CELLS)
    thermo = _thermometer(CELLS, 2)

    def cells_only(turn):
        def step(state, name):
            if state is None:
                return (False, False) if name == turn else None
            return thermo(state, name)
        return gr.machine(None, step, lambda s: s is not None)

    v0, v1 = cells_only("t0"), cells_only("t1")
    # the x coordinate lives on the first track, y on the second
    p0 = seq(gr.pair("t0/t1"), _one_axis(gr, 1))
    p1 = seq(gr.pair("t1/t0"), _one_axis(gr, 0))
    edges = gr.relation(alt(p0, p1))
    same = gr.dfa(seq(gr.sym("t1"), star(gr.sym("00", "11"))))
    bad = _mismatches_at_least(gr, 3)
    return _game(gr, v0, v1, edges, same, bad, "diagonal")


def _one_axis(gr, track):
    ident = star(gr.keep(*CELLS))
    return seq(ident, opt(seq(_flips(gr, track), ident)))


def _box_grammar(turns):
    gr = Grammar(turns + ["x", "xr", "S", "y", "yr", "ys", "ysr"])
    x = gr.sym("x")
    columns = seq(star(x), gr.sym("xr"), star(x))
    plain, stripe = gr.sym("y", "yr"), gr.sym("ys", "ysr")
    rows = gr.dfa(seq(star(plain), power(stripe, 3), star(plain)))
    one_robot = gr.dfa(seq(star(gr.sym("y", "ys")), gr.sym("yr", "ysr"), star(gr.sym("y", "ys"))))
    rows = automata.minimize(automata.intersect(rows, one_robot))
    return gr, columns, rows


def _box_vertices(gr, turn, columns, rows):
    head = gr.dfa(seq(gr.sym(turn), columns, gr.sym("S")))
    return _concat(head, rows)


def _concat(a, b):
    """``L(a)·L(b)`` for DFAs over the same alphabet."""
    shift = a.n_states
    transitions = list(a.transitions()) + [(p + shift, c, q + shift) for p, c, q in b.transitions()]
    for f in a.finals:
        for c, qs in b.delta[b.initial].items():
            for q in qs:
                transitions.append((f, c, q + shift))
    finals = [q + shift for q in b.finals]
    if b.initial in b.finals:
        finals += list(a.finals)
    nfa = automata.Nfa(a.alphabet, shift + b.n_states, a.initial, transitions, finals)
    return automata.minimize(automata.determinize(nfa))


def _box_moves(gr):
    ident_x = star(gr.keep("x", "xr"))
    ident_y = star(gr.keep("y", "yr", "ys", "ysr"))
    sep = gr.keep("S")
    shift_x = seq(ident_x, alt(seq(gr.pair("xr/x"), gr.pair("x/xr")),
                               seq(gr.pair("x/xr"), gr.pair("xr/x"))), ident_x)
    leave, enter = gr.pair("yr/y", "ysr/ys"), gr.pair("y/yr", "ys/ysr")
    shift_y = seq(ident_y, alt(seq(leave, enter), seq(enter, leave)), ident_y)
    return ident_x, ident_y, sep, shift_x, shift_y


def _off_stripe(gr):
    anything = star(gr.sym(*gr.alphabet.symbols))
    return gr.dfa(seq(anything, gr.sym("yr"), anything))


def box():
    gr, columns, rows = _box_grammar(["t0", "t1"])
    v0 = _box_vertices(gr, "t0", columns, rows)
    v1 = _box_vertices(gr, "t1", columns, rows)
    ident_x, ident_y, sep, shift_x, shift_y = _box_moves(gr)
    p0 = seq(gr.pair("t0/t1"), ident_x, sep, shift_y)
    p1 = seq(gr.pair("t1/t0"), alt(ident_x, shift_x), sep, ident_y)
    edges = gr.relation(alt(p0, p1))
    bad = _off_stripe(gr)
    initial = automata.difference(v0, bad)
    return _game(gr, v0, v1, edges, initial, bad, "box")


def solitary_box():
    gr, columns, rows = _box_grammar(["t0"])
    v0 = _box_vertices(gr, "t0", columns, rows)
    v1 = automata.empty(gr.alphabet)
    ident_x, ident_y, sep, shift_x, shift_y = _box_moves(gr)
    edges = gr.relation(seq(gr.keep("t0"), alt(seq(shift_x, sep, ident_y),
                                               seq(ident_x, sep, shift_y))))
    bad = _off_stripe(gr)
    initial = automata.difference(v0, bad)
    return _game(gr, v0, v1, edges, initial, bad, "solitary-box")


# -- counters ------------------------------------------------------------------

LEVELS = ["l0", "l1", "l2", "l3"]


def control_unit():
    gr = Grammar(["t0", "t1"] + LEVELS)
    level = gr.sym(*LEVELS)
    v0 = gr.dfa(seq(gr.sym("t0"), star(level)))
    v1 = gr.dfa(seq(gr.sym("t1"), star(level)))
    ident = star(gr.keep(*LEVELS))
    cool = gr.pair("l1/l0", "l2/l1", "l3/l2")
    heat = gr.pair("l0/l1", "l1/l2", "l2/l3")
    p0 = seq(gr.pair("t0/t1"), ident, opt(seq(cool, ident)))
    p1 = seq(gr.pair("t1/t0"), ident, heat, ident)
    edges = gr.relation(alt(p0, p1))
    initial = gr.dfa(seq(gr.sym("t1"), star(gr.sym("l0"))))
    bad = gr.dfa(seq(gr.sym("t0", "t1"), star(level), gr.sym("l3"), star(level)))
    return _game(gr, v0, v1, edges, initial, bad, "control-unit")


NIM_PILES = 3
NIM_COLUMNS = bit_cells(NIM_PILES)


def nim():
    gr = Grammar(["t0", "t1"] + ["c" + c for c in NIM_COLUMNS])
    col = ["c" + c for c in NIM_COLUMNS]
    column = gr.sym(*col)
    v0 = gr.dfa(seq(gr.sym("t0"), star(column)))
    v1 = gr.dfa(seq(gr.sym("t1"), star(column)))
    ident = star(gr.keep(*col))
    takes = []
    for pile in range(NIM_PILES):
        drop = gr.pair(*(("c" + c, "c" + flip(c, pile)) for c in NIM_COLUMNS if c[pile] == "1"))
        # lower bits of the pile become arbitrary, the other piles stay put
        free = gr.pair(*(("c" + c, "c" + d) for c in NIM_COLUMNS for d in NIM_COLUMNS
                         if all(c[j] == d[j] for j in range(NIM_PILES) if j != pile)))
        takes.append(seq(ident, drop, star(free)))
    turn = alt(gr.pair("t0/t1"), gr.pair("t1/t0"))
    loop = seq(gr.keep("t0"), star(gr.keep("c000")))
    edges = gr.relation(alt(seq(turn, alt(*takes)), loop))
    bad = gr.dfa(seq(gr.sym("t1"), star(gr.sym("c000"))))
    initial = gr.machine(None, _nim_step, _mover_wins)
    return _game(gr, v0, v1, edges, initial, bad, "nim")


def _nim_step(state, name):
    # (some pile >= 2 so far, some column with odd parity so far, pending last column)
    if state is None:
        return (False, False, None) if name == "t0" else None
    if not name.startswith("c"):
        return None
    big, odd, last = state
    if last is not None:
        big = big or "1" in last
        odd = odd or last.count("1") % 2 == 1
    return (big, odd, name[1:])


def _mover_wins(state):
    if state is None:
        return False
    big, odd, last = state
    ones = last.count("1") if last is not None else 0
    if big:
        return odd or ones % 2 == 1
    return ones % 2 == 0


def resource_allocation():
    plain, token = ["i", "r", "c"], ["iT", "rT", "cT"]
    gr = Grammar(["t0", "t1"] + plain + token)

    def proc_step(state, name):
        if state is None:
            return False if name in ("t0", "t1") else None
        if name in plain:
            return state
        if name in token and not state:
            return True
        return None

    def with_turn(turn):
        return gr.machine(None, lambda s, n: None if s is None and n != turn else proc_step(s, n),
                          lambda s: s is True)

    v0, v1 = with_turn("t0"), with_turn("t1")
    ident = star(gr.keep(*plain, *token))
    drop = gr.pair("iT/i", "rT/r", "cT/c")
    take = gr.pair("i/iT", "r/rT", "c/cT")
    pass_token = seq(ident, alt(seq(drop, ident, take), seq(take, ident, drop)), ident)
    keep_token = alt(seq(ident, gr.keep("cT", "rT"), ident), star(gr.keep("i", "iT")))
    p0 = seq(gr.pair("t0/t1"), alt(pass_token, keep_token))
    change = gr.pair("i/r", "iT/rT", "r/i", "rT/iT", "rT/cT", "c/i", "cT/iT")
    p1 = seq(gr.pair("t1/t0"), ident, change, ident)
    edges = gr.relation(alt(p0, p1))
    idle = gr.dfa(seq(gr.sym("t0"), star(gr.sym("i")), gr.sym("iT"), star(gr.sym("i"))))
    anything = star(gr.sym(*plain, *token))
    bad = gr.dfa(seq(gr.sym("t0", "t1"), anything, gr.sym("c"), anything))
    return _game(gr, v0, v1, edges, idle, bad, "resource-allocation")
