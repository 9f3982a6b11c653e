"""Catalog of the nine benchmark games, emitted as game files.

Every generator is parameter-free: the size of a grid, the number of plants
or processes, and the bit width of Nim piles all live in the word length.
"""

from dataclasses import dataclass
from pathlib import Path

from ..game import parse_game, render_game
from . import games


@dataclass(frozen=True)
class BenchmarkSpec:
    name: str
    summary: str
    layout: str
    notes: tuple
    min_length: int
    build: object

    def game(self):
        g = self.build()
        g.name = self.name
        return g


_GRID_LAYOUT = ("turn · x₁…xₙ · S · y₁…yₘ; each cell is a bit pair (Player 0's robot, "
                "Player 1's robot), coordinates are thermometer codes 1*0* per track")

CATALOG = (
    BenchmarkSpec(
        "box",
        "Player 0 moves a robot vertically and must keep it in a horizontal stripe of "
        "three rows; Player 1 moves it horizontally.",
        "t0|t1 · x* xr x* · S · rows, rows over {y, yr, ys, ysr}; the suffix r marks the "
        "robot, the prefix ys the stripe",
        ("The stripe is any block of exactly three consecutive rows; centring it is not "
         "a regular constraint and is left out.",
         "Player 0 must move up or down; Player 1 moves left, right, or stays."),
        6, games.box),
    BenchmarkSpec(
        "control-unit",
        "Player 1 heats one plant per turn, Player 0 may cool one; no plant may reach "
        "the critical level.",
        "t0|t1 · one level l0..l3 per plant",
        ("Player 0 cools one plant by one level or passes.",
         "Player 1 must heat one plant below l3 by one level.",
         "Initial vertices: Player 1 to move with every plant at l0; l3 is critical."),
        1, games.control_unit),
    BenchmarkSpec(
        "diagonal",
        "Player 1 moves a robot horizontally, Player 0 vertically; the robot has to stay "
        "within two cells of the diagonal.",
        "t0|t1 · cells over {00, 01, 10, 11}; first bit x, second bit y, thermometer "
        "coded on a square grid",
        ("Both players move by one step or stay.",
         "Bad: |x - y| >= 3.  Initial: Player 1 to move with x = y."),
        1, games.diagonal),
    BenchmarkSpec(
        "evasion",
        "Two robots make king moves; Player 1 tries to step onto Player 0's robot, and "
        "Player 0 wins outright by leaving the grid.",
        _GRID_LAYOUT + "; turn 00 is Player 0, 11 Player 1, E an escaped robot",
        ("A Player-0 robot on the boundary may escape: the turn symbol becomes E, "
         "which is absorbing and never bad.",
         "Bad: the robots share a cell.  Initial: Player 0 to move, robots apart."),
        2, games.evasion),
    BenchmarkSpec(
        "follow",
        "Player 0 keeps its robot within Manhattan distance two of Player 1's robot.",
        _GRID_LAYOUT + "; turn 00 is Player 0, 11 Player 1",
        ("Both players move to a 4-neighbour or stay.",
         "Initial: Player 1 to move, robots on the same cell."),
        2, games.follow),
    BenchmarkSpec(
        "nim",
        "Misère Nim on three piles with an absorbing loop once the piles are empty.",
        "t0|t1 · columns c{b1}{b2}{b3}, one bit per pile, most significant column first",
        ("Piles are binary numbers rather than unary counters: with unary piles the "
         "set of winning positions is not regular.",
         "A move removes chips from one pile (a strict decrease of its track).",
         "Bad: Player 1 to move with no chips left (Player 0 took the last one).",
         "Initial: the positions the mover wins under misère play."),
        1, games.nim),
    BenchmarkSpec(
        "resource-allocation",
        "One token, n processes; no process may sit in the critical section without "
        "the token.",
        "t0|t1 · one state per process from {i, r, c}, suffix T on the token holder",
        ("Player 0 passes the token to another process, or keeps it when the holder is "
         "critical or requesting, or when every process is idle.",
         "Player 1 toggles one process between idle and requesting, lets the holder "
         "enter the critical section, or lets a critical process go idle.",
         "Initial: Player 0 to move, every process idle."),
        2, games.resource_allocation),
    BenchmarkSpec(
        "robot-vacuum",
        "A robot vacuum (Player 0) must never bump into a human (Player 1) and has to "
        "move away when the human steps onto it.",
        _GRID_LAYOUT + "; turn 00 is Player 0, 11 Player 1",
        ("Both move to a 4-neighbour; the robot may stay only when apart from the human.",
         "Bad: robots on the same cell with Player 1 to move.",
         "Initial: Player 0 to move, robots apart."),
        2, games.robot_vacuum),
    BenchmarkSpec(
        "solitary-box",
        "The box game with a single player steering in all four directions.",
        "t0 · x* xr x* · S · rows, as in box",
        ("Player 1 owns no vertex.  Player 0 must move one step in some direction.",),
        6, games.solitary_box),
)

_BY_NAME = {spec.name: spec for spec in CATALOG}


def list_benchmarks():
    return [spec.name for spec in CATALOG]


def get(name):
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"unknown benchmark {name!r}; choose from {', '.join(_BY_NAME)}") from None


def describe(spec):
    lines = [f"{spec.name}: {spec.summary}", f"layout: {spec.layout}",
             f"minimum word length: {spec.min_length}"]
    lines += [f"- {note}" for note in spec.notes]
    return "\n".join(lines)


def generate(spec):
    """Game-file text for ``spec`` (a :class:`BenchmarkSpec` or a name)."""
    if isinstance(spec, str):
        spec = get(spec)
    return render_game(spec.game(), header=describe(spec))


def load(name):
    """The benchmark game, parsed back from its own file text."""
    return parse_game(generate(name), name=name)


def write_all(directory, names=None):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name in names or list_benchmarks():
        path = directory / f"{name}.game"
        path.write_text(generate(name), encoding="utf-8")
        paths.append(path)
    return paths
