#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "quadcx/linalg.hpp"
#include "quadcx/simplicial.hpp"

namespace oracles {

using namespace quadcx;

// Independent computation for the linear cone span(e_1..e_k) in q_n with the standard module:
// Lambda <f_1..f_m> (x) Q[x_1..x_k], d = sum_i 2 x_i (contraction by e_i), graded by word parity.
inline std::pair<std::vector<int>, std::vector<int>> koszul_oracle(int n, int k, int D) {
    int m = n / 2, S = 1 << m;
    auto monos = [&](int d) {
        std::vector<std::vector<int>> out;
        if (d < 0) return out;
        std::vector<int> cur(k, 0);
        std::function<void(int, int)> rec = [&](int at, int left) {
            if (at == k) {
                if (left == 0) out.push_back(cur);
                return;
            }
            for (int a = 0; a <= left; ++a) {
                cur[at] = a;
                rec(at + 1, left - a);
            }
            cur[at] = 0;
        };
        rec(0, d);
        return out;
    };
    // matrix of d from parity p in degree d to parity 1-p in degree d+1
    auto dmat = [&](int p, int d) {
        auto src = monos(d), tgt = monos(d + 1);
        std::vector<int> ws, wt;
        for (int w = 0; w < S; ++w) (std::popcount(unsigned(w)) % 2 == p ? ws : wt).push_back(w);
        Mat M(static_cast<int>(wt.size() * tgt.size()), static_cast<int>(ws.size() * src.size()));
        for (size_t a = 0; a < ws.size(); ++a)
            for (size_t u = 0; u < src.size(); ++u)
                for (int i = 0; i < k; ++i) {
                    int w = ws[a];
                    if (!((w >> i) & 1)) continue;
                    int pos = std::popcount(unsigned(w & ((1 << i) - 1)));
                    int nw = w ^ (1 << i);
                    auto mono = src[u];
                    mono[i] += 1;
                    size_t b = std::find(wt.begin(), wt.end(), nw) - wt.begin();
                    size_t v = std::find(tgt.begin(), tgt.end(), mono) - tgt.begin();
                    M(static_cast<int>(b * tgt.size() + v), static_cast<int>(a * src.size() + u)) += pos % 2 ? -2 : 2;
                }
        return std::make_pair(M, static_cast<int>(ws.size() * src.size()));
    };
    std::vector<int> h0, h1;
    for (int d = 0; d <= D; ++d) {
        auto [p_out, dim0] = dmat(0, d);
        auto [m_out, dim1] = dmat(1, d);
        auto [p_in, x0] = dmat(0, d - 1);
        auto [m_in, x1] = dmat(1, d - 1);
        (void)x0;
        (void)x1;
        h0.push_back(dim0 - rank(p_out) - rank(m_in));
        h1.push_back(dim1 - rank(m_out) - rank(p_in));
    }
    return {h0, h1};
}

// chains in the face poset, counted by length (dimension of the subdivided simplex)
inline std::vector<int> chain_counts(const SimplicialSubset& K) {
    std::vector<Face> fs(K.faces.begin(), K.faces.end());
    std::sort(fs.begin(), fs.end(), [](const Face& a, const Face& b) { return a.size() < b.size(); });
    // ending[f][l] = chains of l+1 faces ending at f
    std::map<Face, std::vector<int>> ending;
    std::vector<int> total;
    for (auto& f : fs) {
        std::vector<int> c(f.size(), 0);
        c[0] = 1;
        for (auto& g : fs) {
            if (g.size() >= f.size()) break;
            if (!std::includes(f.begin(), f.end(), g.begin(), g.end())) continue;
            auto& cg = ending[g];
            for (size_t l = 0; l + 1 < c.size() && l < cg.size(); ++l) c[l + 1] += cg[l];
        }
        ending[f] = c;
        for (size_t l = 0; l < c.size(); ++l) {
            if (total.size() <= l) total.resize(l + 1, 0);
            total[l] += c[l];
        }
    }
    while (!total.empty() && total.back() == 0) total.pop_back();
    return total;
}

}  // namespace oracles
