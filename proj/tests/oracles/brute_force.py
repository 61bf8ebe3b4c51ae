#!/usr/bin/env python3
# Copyright 2026 The citedyn Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Brute-force reference values for every metric series on a small corpus.

Everything is recomputed from the raw edge list with plain loops: pairwise
Gini, dense PageRank, exhaustive co-citation pairs. Output goes to
OUT_DIR/<series>.csv (x,y), OUT_DIR/elite_members.csv and OUT_DIR/fits.csv.

  brute_force.py CORPUS_DIR OUT_DIR [MIN_YEAR MAX_YEAR]
"""

import csv
import math
import sys
from collections import defaultdict
from itertools import combinations
from pathlib import Path

K = 50
THRESHOLD = 0.8
DAMPING = 0.85
PR_TOL = 1e-10
TIE_TOL = 1e-6
MIN_CITATIONS = 10
CUTOFF = 2005
WINDOW = 10
HORIZON = 2
PER_DECADE = 20
HEAPS_MIN = 10


def load(corpus_dir):
    papers = {}
    with open(Path(corpus_dir) / "papers.csv", newline="") as f:
        for row in csv.DictReader(f):
            papers[row["id"]] = (int(row["pub_year"]), row["in_discipline"] == "1")
    edges = []
    with open(Path(corpus_dir) / "edges.csv", newline="") as f:
        for row in csv.DictReader(f):
            a, b = row["citing_id"], row["cited_id"]
            if a == b or a not in papers or b not in papers:
                continue
            edges.append((a, b))
    return papers, edges


def write_series(out, name, points):
    with open(out / (name + ".csv"), "w", newline="\n") as f:
        f.write("x,y\n")
        for x, y in points:
            f.write("%s,%s\n" % (repr(float(x)), repr(float(y))))


def ols(xs, ys):
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx
    return slope, my - slope * mx


def pairwise_gini(v):
    n = len(v)
    mean = sum(v) / n
    return sum(abs(a - b) for a in v for b in v) / (2 * n * n * mean)


def ranked_jaccard(ra, rb, k):
    def expand(r):
        m = {}
        for i, x in enumerate(r[:k]):
            m[x] = k - i  # rank i+1 -> k - (i+1) + 1 copies
        return m
    ea, eb = expand(ra), expand(rb)
    keys = set(ea) | set(eb)
    inter = sum(min(ea.get(x, 0), eb.get(x, 0)) for x in keys)
    union = sum(max(ea.get(x, 0), eb.get(x, 0)) for x in keys)
    return inter / union


def main(corpus_dir, out, y0=1980, y1=2019):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    papers, edges = load(corpus_dir)
    year = {p: v[0] for p, v in papers.items()}
    disc = {p: v[1] for p, v in papers.items()}
    years = range(y0, y1 + 1)

    k = defaultdict(int)  # (paper, year) -> citations
    for a, b in edges:
        k[(b, year[a])] += 1
    total_in = defaultdict(int)
    for (x, t), c in k.items():
        total_in[t] += c
    total_of = defaultdict(int)
    for (x, t), c in k.items():
        total_of[x] += c

    def cited_in(t):
        return {x: c for (x, tt), c in k.items() if tt == t}

    def ranking(t):
        row = cited_in(t)
        return sorted(row, key=lambda x: (-row[x], year[x], x))

    # publications
    n_by_year = defaultdict(int)
    for p in papers:
        if disc[p]:
            n_by_year[year[p]] += 1
    total = sum(n_by_year.values())
    first, last = min(n_by_year), max(n_by_year)
    pubs = [(t, n_by_year[t] / total) for t in range(first, last + 1)]
    write_series(out, "publications", pubs)
    growth = None
    if all(y > 0 for _, y in pubs):
        growth = ols([t for t, _ in pubs], [math.log(y) for _, y in pubs])

    # two-year uptake
    c2y, f0 = [], []
    for t in years:
        members = [p for p in papers if disc[p] and year[p] == t]
        if not members or t + HORIZON > y1:
            continue
        win = [sum(k.get((p, s), 0) for s in range(t, t + HORIZON + 1))
               for p in members]
        c2y.append((t, sum(win) / len(members)))
        f0.append((t, sum(1 for w in win if w == 0) / len(members)))
    write_series(out, "uptake_c2y", c2y)
    write_series(out, "uptake_f0_2y", f0)

    # gini over cited papers
    gini = []
    for t in years:
        row = cited_in(t)
        if row:
            gini.append((t, pairwise_gini(list(row.values()))))
    write_series(out, "gini", gini)

    # attention cycles
    acc = defaultdict(list)
    for p in sorted(papers, key=lambda q: (year[q], q)):
        t0 = year[p]
        if not disc[p] or total_of[p] < MIN_CITATIONS or t0 > CUTOFF:
            continue
        if t0 + WINDOW - 1 > y1:
            continue
        xi = [k.get((p, t0 + i), 0) / total_in[t0 + i] if total_in[t0 + i]
              else 0.0 for i in range(WINDOW)]
        area = sum(xi)
        if area == 0:
            continue
        norm = [v / area for v in xi]
        peak = max(range(WINDOW), key=lambda i: (norm[i], -i))
        fc = sum(norm[: peak + 1])
        half = max(i for i in range(peak, WINDOW) if norm[i] >= norm[peak] / 2)
        acc[t0].append((peak, fc, half - peak))
    for idx, name in enumerate(["cycle_t_peak", "cycle_f_c_peak",
                                "cycle_t_half"]):
        write_series(out, name, [(t, sum(s[idx] for s in v) / len(v))
                                 for t, v in sorted(acc.items())])

    # top-k turnover by citations
    jc, prev = [], None
    for t in years:
        r = ranking(t)
        if not r:
            prev = None
            continue
        if prev is not None:
            jc.append((t, ranked_jaccard(prev, r, K)))
        prev = r
    write_series(out, "jaccard_citations", jc)

    # top-k turnover by PageRank on the yearly graph
    def pr_ranking(t):
        pub = {p for p in papers if year[p] == t}
        es = sorted({(a, b) for a, b in edges if a in pub or b in pub})
        if not es:
            return []
        nodes = sorted(pub | {a for a, _ in es} | {b for _, b in es},
                       key=lambda x: order_index[x])
        idx = {x: i for i, x in enumerate(nodes)}
        n = len(nodes)
        m = [[0.0] * n for _ in range(n)]
        outdeg = [0] * n
        for a, b in es:
            outdeg[idx[a]] += 1
        for a, b in es:
            m[idx[b]][idx[a]] += 1.0 / outdeg[idx[a]]
        pr = [1.0 / n] * n
        for _ in range(1000):
            dangling = sum(pr[i] for i in range(n) if outdeg[i] == 0)
            nxt = [(1 - DAMPING) / n + DAMPING * (sum(m[i][j] * pr[j]
                   for j in range(n)) + dangling / n) for i in range(n)]
            delta = sum(abs(a - b) for a, b in zip(nxt, pr))
            pr = nxt
            if delta < PR_TOL:
                break
        order = sorted(range(n), key=lambda i: (-pr[i], i))
        ranked, group = [], [order[0]]
        for a, b in zip(order, order[1:]):
            if pr[a] - pr[b] > TIE_TOL * pr[a]:
                ranked += sorted(group, key=lambda i: (year[nodes[i]], nodes[i]))
                group = []
            group.append(b)
        ranked += sorted(group, key=lambda i: (year[nodes[i]], nodes[i]))
        return [nodes[i] for i in ranked]

    # corpus storage order is the papers.csv order
    order_index = {p: i for i, p in enumerate(papers)}
    jp, prev = [], None
    for t in years:
        r = pr_ranking(t)
        if not r:
            prev = None
            continue
        if prev is not None:
            jp.append((t, ranked_jaccard(prev, r, K)))
        prev = r
    write_series(out, "jaccard_pagerank", jp)

    # elite sets and co-citation density
    esize, eage, dens, members_rows = [], [], [], []
    for t in years:
        row = cited_in(t)
        if not row:
            continue
        tot = sum(row.values())
        r = ranking(t)
        members, mass = [], 0
        for x in r:
            members.append(x)
            mass += row[x]
            if 5 * mass >= 4 * tot:  # exact 80 % test
                break
        esize.append((t, len(members) / len(r)))
        eage.append((t, sum(t - year[x] for x in members) / len(members)))
        for i, x in enumerate(members):
            members_rows.append((t, i + 1, x))
        pairs = set()
        for p in papers:
            if year[p] != t:
                continue
            refs = sorted({b for a, b in edges if a == p})
            for a, b in combinations(refs, 2):
                pairs.add((a, b))
        n, m = len(r), len(members)
        if n < 2 or m < 2 or not pairs:
            continue
        es = set(members)
        e_elite = sum(1 for a, b in pairs if a in es and b in es)
        whole = len(pairs) / (n * (n - 1) / 2)
        sub = e_elite / (m * (m - 1) / 2)
        dens.append((t, sub / whole))
    write_series(out, "elite_size_fraction", esize)
    write_series(out, "elite_mean_age", eage)
    write_series(out, "cocitation_density", dens)
    with open(out / "elite_members.csv", "w", newline="\n") as f:
        f.write("year,rank,id\n")
        for t, i, x in members_rows:
            f.write("%d,%d,%s\n" % (t, i, x))

    # heaps curve and discovery, papers in (year, id) order
    refs_of = defaultdict(list)
    for a, b in edges:
        refs_of[a].append(b)
    chrono = sorted(papers, key=lambda p: (year[p], p))
    stream = [b for p in chrono for b in refs_of[p]]
    seen, counts = set(), []
    for x in stream:
        seen.add(x)
        counts.append(len(seen))
    heaps, j, last_n = [], 0, 0
    while True:
        n = int(math.floor(10 ** (j / PER_DECADE) + 0.5))
        j += 1
        if n > len(stream):
            break
        if n == last_n:
            continue
        heaps.append((n, counts[n - 1]))
        last_n = n
    if last_n != len(stream):
        heaps.append((len(stream), counts[-1]))
    write_series(out, "heaps", heaps)
    hx = [math.log(x) for x, _ in heaps if x >= HEAPS_MIN]
    hy = [math.log(y) for x, y in heaps if x >= HEAPS_MIN]
    beta = ols(hx, hy)

    disc_series = []
    for t in years:
        cur = [b for p in chrono if year[p] == t for b in refs_of[p]]
        if not cur:
            continue
        fresh = sum(1 for b in cur
                    if all(k.get((b, s), 0) == 0 for s in range(y0, t)))
        disc_series.append((t, fresh / len(cur)))
    write_series(out, "discovery", disc_series)

    with open(out / "fits.csv", "w", newline="\n") as f:
        f.write("name,slope,prefactor\n")
        if growth:
            f.write("growth,%r,%r\n" % (growth[0], math.exp(growth[1])))
        f.write("heaps,%r,%r\n" % (beta[0], math.exp(beta[1])))


if __name__ == "__main__":
    args = sys.argv[1:]
    if len(args) not in (2, 4):
        sys.exit(__doc__)
    if len(args) == 4:
        main(args[0], args[1], int(args[2]), int(args[3]))
    else:
        main(args[0], args[1])
