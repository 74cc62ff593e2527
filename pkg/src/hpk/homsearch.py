"""Backtracking enumeration of simplicial maps.

Images of degenerate simplices are forced by their Eilenberg-Zilber
decomposition, so the search only branches over nondegenerate simplices,
level by level; face compatibility prunes each level against the previous
one.  ``pins`` pre-assigns images (used for extension problems) and
``constraint`` is an extra per-simplex filter (used for fibered lifting
problems).  Enumeration order is canonical, so results are deterministic.
"""

from itertools import product

from .sset import SimplicialMap


def enumerate_simplicial_maps(source, target, pins=None, constraint=None, meter=None):
    """Yield every simplicial map source -> target, in canonical order."""
    if source.depth != target.depth:
        raise ValueError("source and target must have equal depth")
    pins = dict(pins or {})
    depth = source.depth

    def level_choices(n, assigned):
        """(forced, [(x, candidates)]) for level n given lower levels."""
        forced = {}
        open_simplices = []
        for x in source.levels[n]:
            m, base, word = source.decompose(n, x)
            if m != n:
                y = target.apply_degeneracy_word(m, assigned[m][base], word)
                if (n, x) in pins and pins[(n, x)] != y:
                    return None
                if constraint is not None and not constraint(n, x, y):
                    return None
                forced[x] = y
            else:
                if (n, x) in pins:
                    candidates = [pins[(n, x)]]
                else:
                    candidates = list(target.levels[n])
                if n > 0:
                    candidates = [
                        y
                        for y in candidates
                        if all(
                            target.face(n, i, y) == assigned[n - 1][source.face(n, i, x)]
                            for i in range(n + 1)
                        )
                    ]
                if constraint is not None:
                    candidates = [y for y in candidates if constraint(n, x, y)]
                if not candidates:
                    return None
                open_simplices.append((x, candidates))
        return forced, open_simplices

    def recurse(n, assigned):
        if meter is not None:
            meter.tick()
        if n > depth:
            yield SimplicialMap(
                source, target, [dict(assigned[m]) for m in range(depth + 1)], check=False
            )
            return
        choices = level_choices(n, assigned)
        if choices is None:
            return
        forced, open_simplices = choices
        names = [x for x, _ in open_simplices]
        for combo in product(*(cands for _, cands in open_simplices)):
            if meter is not None:
                meter.tick()
            level_map = dict(forced)
            level_map.update(zip(names, combo))
            yield from recurse(n + 1, assigned + [level_map])

    yield from recurse(0, [])


def count_simplicial_maps(source, target, meter=None):
    return sum(1 for _ in enumerate_simplicial_maps(source, target, meter=meter))
