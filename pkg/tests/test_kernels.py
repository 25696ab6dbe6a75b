"""The compiled and pure kernels must agree bit for bit."""
import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semwidth import kernels
from semwidth.cq import dumps
from semwidth.decomposition import fhw_exact, ghw_exact, sampled_lower_bound
from semwidth.generators import gen_inflation, gen_random_cq
from semwidth.homomorphism import compute_core, find_homomorphism, mapping_to_json
from semwidth.hypergraph import hypergraph_of

BACKENDS = kernels.backends()
needs_both = pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled extension not built")


def _random_csp(rng):
    n_vars, n_values = rng.randint(1, 7), rng.randint(1, 5)
    domains = [sorted(rng.sample(range(n_values), rng.randint(1, n_values))) for _ in range(n_vars)]
    atom_vars, cands = [], []
    for _ in range(rng.randint(0, 6)):
        arity = rng.randint(1, min(3, n_vars))
        atom_vars.append(rng.sample(range(n_vars), arity))
        cands.append([tuple(rng.randrange(n_values) for _ in range(arity)) for _ in range(rng.randint(0, 8))])
    return n_vars, n_values, domains, atom_vars, cands


@needs_both
@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**9), st.booleans())
def test_hom_search_agrees(seed, injective):
    args = _random_csp(random.Random(seed))
    results = {name: mod.hom_search(*args, injective) for name, mod in BACKENDS.items()}
    assert results["pure"] == results["compiled"]
    sol = results["pure"]
    if sol is not None:
        n_vars, _, domains, atom_vars, cands = args
        assert all(sol[v] in domains[v] for v in range(n_vars))
        for vs, cs in zip(atom_vars, cands):
            assert tuple(sol[v] for v in vs) in cs
        if injective:
            assert len(set(sol)) == len(sol)


def _random_adj(rng, n):
    adj = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < 0.4:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    return adj


@needs_both
@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9), st.integers(1, 8))
def test_elimination_kernels_agree(seed, n):
    rng = random.Random(seed)
    adj = _random_adj(rng, n)
    bags = {name: list(mod.elimination_bags(n, adj)) for name, mod in BACKENDS.items()}
    assert bags["pure"] == bags["compiled"]
    rank = [rng.randint(0, 5) for _ in range(1 << n)]
    dp = {name: tuple(map(list, mod.elimination_dp(n, bags["pure"], rank))) for name, mod in BACKENDS.items()}
    assert dp["pure"] == dp["compiled"]


@needs_both
@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9), st.integers(0, 6))
def test_pair_checks_agree(seed, n):
    rng = random.Random(seed)
    # mix of arbitrary tables and genuinely modular ones
    if rng.random() < 0.5:
        vals = [rng.randint(-3, 6) for _ in range(1 << n)]
    else:
        w = [rng.randint(0, 4) for _ in range(n)]
        vals = [sum(w[i] for i in range(n) if m >> i & 1) for m in range(1 << n)]
    out = {name: tuple(mod.pair_checks(n, vals)) for name, mod in BACKENDS.items()}
    assert out["pure"] == out["compiled"]


@needs_both
def test_pair_checks_fallback_on_huge_values():
    vals = [0, 2**70, 2**70, 2**71]
    assert kernels.pair_checks(2, vals) == tuple(BACKENDS["pure"].pair_checks(2, vals))


def _library_outputs():
    out = []
    for seed in range(25):
        rng = random.Random(seed)
        q = gen_inflation(gen_random_cq(seed, rng.randint(2, 5), rng.randint(1, 4), 2, 2), 3, seed)
        res = compute_core(q)
        h = hypergraph_of(q)
        out.append(dumps({
            "core": str(res.core),
            "retraction": mapping_to_json(res.retraction),
            "hom": mapping_to_json(find_homomorphism(q, res.core)),
            "fhw": fhw_exact(h).to_json(),
            "ghw": ghw_exact(h).to_json(),
            "subw": sampled_lower_bound(h, "submodular", 3, seed).report.to_json(),
        }))
    return out


@needs_both
def test_library_results_identical_across_backends(monkeypatch):
    from semwidth import cover
    seen = {}
    for name, mod in BACKENDS.items():
        monkeypatch.setattr(kernels, "_impl", mod)
        cover._rho_star.cache_clear()
        cover._rho_integral.cache_clear()
        seen[name] = _library_outputs()
    assert seen["pure"] == seen["compiled"]


def test_environment_forces_pure_backend():
    code = "from semwidth import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, SEMWIDTH_PURE="1")
    res = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
    assert res.stdout.strip() == "pure"
