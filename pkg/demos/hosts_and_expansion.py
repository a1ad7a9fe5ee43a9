"""
Sparse hosts and their expansion
================================

A host is a random graph G(2an, c/n) pruned down to its an lowest-degree
vertices. Its k-th power is what later gets blown up.
"""

from sizeramsey import certify_expansion_exact, certify_expansion_sampled, graph_power, paper_constants, sample_host

# the exact constants are rationals; t is a very large integer
pc = paper_constants(2)
print("k=2 constants:", f"eps={pc.epsilon} a={pc.a} c={pc.c} b={pc.b} t={pc.t}")

# at desk scale c/n would exceed 1, so pick a small c instead
sample = sample_host(a=14, n=5, c="1/2", seed=7)
h = sample.graph
print("host order", h.order, "edges", h.num_edges, "max degree", sample.max_degree)

h2 = graph_power(h, 2)
print("square of host has", h2.num_edges, "edges")

# two disjoint sets of size sigma must always see an edge between them
small = sample_host(a=6, n=4, c=3, seed=1).graph
for sigma in (3, 4, 5):
    print("exact, sigma", sigma, "->", certify_expansion_exact(small, sigma).verdict)

# the sampled certifier can only refute, never prove
cert = certify_expansion_sampled(h, sigma=10, trials=500, seed=0)
print("sampled, sigma 10 ->", cert.verdict)
