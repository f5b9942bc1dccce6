"""Random legal Markov-move scripts for property tests."""

from ttknots.braid import BraidWord, Move, apply_move


def legal_moves(b: BraidWord):
    w = b.letters
    moves = []
    for i in range(len(w) - 1):
        if w[i] == -w[i + 1]:
            moves.append(Move("free_reduce", i))
        if abs(abs(w[i]) - abs(w[i + 1])) >= 2:
            moves.append(Move("commute", i))
    for i in range(len(w) - 2):
        x, y, z = w[i:i + 3]
        if x == z and ((x > 0) == (y > 0)) and abs(abs(x) - abs(y)) == 1:
            moves.append(Move("braid_relation", i))
    for g in range(1, b.strands):
        moves += [Move("conjugate", g), Move("conjugate", -g)]
    if b.strands < 7:
        moves += [Move("stabilize", 1), Move("stabilize", -1)]
    n = b.strands
    if n >= 2 and w and abs(w[-1]) == n - 1 and sum(abs(x) == n - 1 for x in w) == 1:
        moves.append(Move("destabilize"))
    return moves


def random_script(rng, b: BraidWord, steps: int):
    """A script of ``steps`` moves, each legal at the point where it is applied."""
    script = []
    for _ in range(steps):
        options = legal_moves(b)
        # favour structural moves so scripts do more than conjugate
        structural = [m for m in options if m.kind not in ("conjugate", "stabilize")]
        pool = structural if structural and rng.random() < 0.6 else options
        move = rng.choice(pool)
        b = apply_move(b, move)
        script.append(move)
    return script, b
