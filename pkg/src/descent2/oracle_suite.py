"""Randomized verification suite for the group-cohomology identities.

Runs the twisted-boundary identity over random small (group, module,
extension, twist) data and the corestriction/cup compatibility over random
subgroup pairs with index at most four.  Deterministically seeded; a single
failure is reported loudly (and fails the test suite).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List

from .groupcoh import (
    FiniteGroup,
    FiniteModule,
    ModuleExtension,
    Subgroup,
    hom_module,
    is_cocycle1,
    verify_shapiro_cup,
    verify_twist_identity,
    z1_generators,
)


def _small_groups(max_order: int) -> List[FiniteGroup]:
    out = [FiniteGroup.cyclic(2), FiniteGroup.cyclic(3), FiniteGroup.cyclic(4)]
    out.append(FiniteGroup.product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2)))
    out.append(FiniteGroup.symmetric(3))
    out.append(FiniteGroup.cyclic(6))
    out.append(FiniteGroup.cyclic(8))
    out.append(FiniteGroup.product(FiniteGroup.cyclic(4), FiniteGroup.cyclic(2)))
    return [g for g in out if g.order <= max_order]


def _random_module(G: FiniteGroup, ring: int, rank: int, rng: random.Random) -> FiniteModule:
    """A module on a random involutive-or-permutation style action."""
    for _ in range(50):
        try:
            images = {}
            for g in range(G.order):
                if g == G.identity:
                    continue
                # try permutation-with-signs matrices: always invertible
                perm = list(range(rank))
                rng.shuffle(perm)
                mat = [[0] * rank for _ in range(rank)]
                for i, j in enumerate(perm):
                    mat[i][j] = 1 if ring == 2 else rng.choice([1, 3])
                images[g] = mat
            return FiniteModule.from_generator_matrices(G, ring, images)
        except ValueError:
            continue
    return FiniteModule.trivial(G, ring, rank)


def _random_cocycle(M: FiniteModule, rng: random.Random):
    gens = z1_generators(M)
    if not gens:
        return {g: M.zero() for g in range(M.group.order)}
    phi = {g: M.zero() for g in range(M.group.order)}
    for gen in gens:
        if rng.random() < 0.6:
            c = rng.randrange(1, M.ring)
            for g in phi:
                phi[g] = M.add(phi[g], tuple((c * x) % M.ring for x in gen[g]))
    if not is_cocycle1(M, phi):
        raise AssertionError("random combination is not a cocycle")
    return phi


@dataclass
class SuiteResult:
    twist_cases: int
    twist_failures: int
    shapiro_cases: int
    shapiro_failures: int

    @property
    def passed(self) -> bool:
        return self.twist_failures == 0 and self.shapiro_failures == 0

    def to_json(self) -> Dict[str, int]:
        return {
            "twist_cases": self.twist_cases,
            "twist_failures": self.twist_failures,
            "shapiro_cases": self.shapiro_cases,
            "shapiro_failures": self.shapiro_failures,
            "passed": self.passed,
        }


def _subgroups_upto_index(G: FiniteGroup, max_index: int) -> List[Subgroup]:
    """Cyclic subgroups of index at most max_index (enough variety here)."""
    seen = set()
    out = []
    for g in range(G.order):
        elems = {G.identity}
        x = g
        while x not in elems:
            elems.add(x)
            x = G.mul(x, g)
        key = tuple(sorted(elems))
        if key in seen:
            continue
        seen.add(key)
        if G.order // len(elems) <= max_index:
            out.append(Subgroup(G, key))
    return out


def run_suite(twist_cases: int = 100, shapiro_cases: int = 50, seed: int = 20240917) -> SuiteResult:
    rng = random.Random(seed)
    groups = _small_groups(16)
    twist_fail = 0
    done = 0
    while done < twist_cases:
        G = rng.choice(groups)
        ring = rng.choice([2, 2, 4])
        rank = rng.choice([1, 2])
        M = _random_module(G, ring, rank, rng)
        N = _random_module(G, ring, rank, rng)
        ext = ModuleExtension.split(M, N)
        hom = hom_module(M, N)
        c = _random_cocycle(hom, rng)
        if not verify_twist_identity(ext, hom, c):
            twist_fail += 1
        done += 1
    shapiro_fail = 0
    done = 0
    while done < shapiro_cases:
        G = rng.choice(groups)
        subs = _subgroups_upto_index(G, 4)
        if not subs:
            continue
        sub = rng.choice(subs)
        ring = 2
        M_G = _random_module(G, ring, rng.choice([1, 2]), rng)
        from .groupcoh import restrict_module

        H = sub.as_group()
        M_res = restrict_module(sub, M_G)
        R_H = FiniteModule.trivial(H, ring, 1)
        theta = _random_cocycle(M_res, rng)
        psi = _random_cocycle(R_H, rng)
        if not verify_shapiro_cup(sub, M_G, theta, psi):
            shapiro_fail += 1
        done += 1
    return SuiteResult(twist_cases, twist_fail, shapiro_cases, shapiro_fail)
