// Maximum-weight matching in general graphs: Edmonds' primal-dual blossom
// method in the O(n^3) formulation of Galil (1986). Vertex duals are kept
// doubled so that integer weights never produce fractional duals.

#include <algorithm>
#include <limits>
#include <set>
#include <string>

#include "ikep/error.hpp"
#include "ikep/matching.hpp"

namespace ikep {

void WeightedGraph::validate() const {
  if (n_vertices < 0) throw ValidationError("negative vertex count");
  std::set<std::pair<int, int>> seen;
  for (const WeightedEdge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n_vertices || e.v >= n_vertices) {
      throw ValidationError("weighted edge endpoint out of range");
    }
    if (e.u == e.v) throw ValidationError("weighted graph has a self-loop");
    if (e.weight < 0) throw ValidationError("negative edge weight");
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      throw ValidationError("weighted graph has parallel edges");
    }
  }
}

namespace {

class WeightedBlossom {
 public:
  WeightedBlossom(const WeightedGraph& g, bool max_cardinality)
      : edges_(g.edges), nvertex_(g.n_vertices), max_cardinality_(max_cardinality) {}

  std::vector<int> run();

 private:
  using Weight = std::int64_t;

  Weight slack(int k) const {
    const WeightedEdge& e = edges_[k];
    return dualvar_[e.u] + dualvar_[e.v] - 2 * e.weight;
  }

  template <typename F>
  void for_each_leaf(int b, F&& f) const {
    if (b < nvertex_) {
      f(b);
      return;
    }
    for (int t : childs_[b]) for_each_leaf(t, f);
  }

  void assign_label(int w, int t, int p);
  int scan_blossom(int v, int w);
  void add_blossom(int base, int k);
  void expand_blossom(int b, bool endstage);
  void augment_blossom(int b, int v);
  void augment_matching(int k);

  std::vector<WeightedEdge> edges_;
  int nvertex_;
  bool max_cardinality_;

  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<int> labelend_;
  std::vector<int> inblossom_;
  std::vector<int> blossomparent_;
  std::vector<std::vector<int>> childs_;
  std::vector<int> blossombase_;
  std::vector<std::vector<int>> endps_;
  std::vector<int> bestedge_;
  std::vector<std::vector<int>> blossombestedges_;
  std::vector<char> has_bestedges_;
  std::vector<int> unusedblossoms_;
  std::vector<Weight> dualvar_;
  std::vector<char> allowedge_;
  std::vector<int> queue_;
};

void WeightedBlossom::assign_label(int w, int t, int p) {
  const int b = inblossom_[w];
  label_[w] = label_[b] = t;
  labelend_[w] = labelend_[b] = p;
  bestedge_[w] = bestedge_[b] = -1;
  if (t == 1) {
    for_each_leaf(b, [&](int v) { queue_.push_back(v); });
  } else if (t == 2) {
    const int base = blossombase_[b];
    assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
  }
}

int WeightedBlossom::scan_blossom(int v, int w) {
  std::vector<int> path;
  int base = -1;
  while (v != -1 || w != -1) {
    int b = inblossom_[v];
    if (label_[b] & 4) {
      base = blossombase_[b];
      break;
    }
    path.push_back(b);
    label_[b] = 5;
    if (labelend_[b] == -1) {
      v = -1;
    } else {
      v = endpoint_[labelend_[b]];
      b = inblossom_[v];
      v = endpoint_[labelend_[b]];
    }
    if (w != -1) std::swap(v, w);
  }
  for (int b : path) label_[b] = 1;
  return base;
}

void WeightedBlossom::add_blossom(int base, int k) {
  int v = edges_[k].u;
  int w = edges_[k].v;
  const int bb = inblossom_[base];
  int bv = inblossom_[v];
  int bw = inblossom_[w];
  const int b = unusedblossoms_.back();
  unusedblossoms_.pop_back();
  blossombase_[b] = base;
  blossomparent_[b] = -1;
  blossomparent_[bb] = b;
  std::vector<int>& path = childs_[b];
  std::vector<int>& endps = endps_[b];
  path.clear();
  endps.clear();
  while (bv != bb) {
    blossomparent_[bv] = b;
    path.push_back(bv);
    endps.push_back(labelend_[bv]);
    v = endpoint_[labelend_[bv]];
    bv = inblossom_[v];
  }
  path.push_back(bb);
  std::reverse(path.begin(), path.end());
  std::reverse(endps.begin(), endps.end());
  endps.push_back(2 * k);
  while (bw != bb) {
    blossomparent_[bw] = b;
    path.push_back(bw);
    endps.push_back(labelend_[bw] ^ 1);
    w = endpoint_[labelend_[bw]];
    bw = inblossom_[w];
  }
  label_[b] = 1;
  labelend_[b] = labelend_[bb];
  dualvar_[b] = 0;
  for_each_leaf(b, [&](int leaf) {
    if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
    inblossom_[leaf] = b;
  });

  std::vector<int> bestedgeto(2 * nvertex_, -1);
  auto consider = [&](int kk) {
    int i = edges_[kk].u;
    int j = edges_[kk].v;
    if (inblossom_[j] == b) std::swap(i, j);
    const int bj = inblossom_[j];
    if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
      bestedgeto[bj] = kk;
    }
  };
  for (int sub : path) {
    if (!has_bestedges_[sub]) {
      for_each_leaf(sub, [&](int leaf) {
        for (int p : neighbend_[leaf]) consider(p / 2);
      });
    } else {
      for (int kk : blossombestedges_[sub]) consider(kk);
    }
    blossombestedges_[sub].clear();
    has_bestedges_[sub] = 0;
    bestedge_[sub] = -1;
  }
  std::vector<int>& best = blossombestedges_[b];
  best.clear();
  for (int kk : bestedgeto) {
    if (kk != -1) best.push_back(kk);
  }
  has_bestedges_[b] = 1;
  bestedge_[b] = -1;
  for (int kk : best) {
    if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
  }
}

void WeightedBlossom::expand_blossom(int b, bool endstage) {
  const std::vector<int> children = childs_[b];
  for (int s : children) {
    blossomparent_[s] = -1;
    if (s < nvertex_) {
      inblossom_[s] = s;
    } else if (endstage && dualvar_[s] == 0) {
      expand_blossom(s, endstage);
    } else {
      for_each_leaf(s, [&](int leaf) { inblossom_[leaf] = s; });
    }
  }
  if (!endstage && label_[b] == 2) {
    const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
    const int len = static_cast<int>(children.size());
    int j = static_cast<int>(std::find(children.begin(), children.end(), entrychild) - children.begin());
    int jstep;
    int endptrick;
    if (j & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    auto child_at = [&](int idx) { return children[((idx % len) + len) % len]; };
    auto endp_at = [&](int idx) { return endps_[b][((idx % len) + len) % len]; };
    int p = labelend_[b];
    while (j != 0) {
      label_[endpoint_[p ^ 1]] = 0;
      label_[endpoint_[endp_at(j - endptrick) ^ endptrick ^ 1]] = 0;
      assign_label(endpoint_[p ^ 1], 2, p);
      allowedge_[endp_at(j - endptrick) / 2] = 1;
      j += jstep;
      p = endp_at(j - endptrick) ^ endptrick;
      allowedge_[p / 2] = 1;
      j += jstep;
    }
    int bv = child_at(j);
    label_[endpoint_[p ^ 1]] = label_[bv] = 2;
    labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
    bestedge_[bv] = -1;
    j += jstep;
    while (child_at(j) != entrychild) {
      bv = child_at(j);
      if (label_[bv] == 1) {
        j += jstep;
        continue;
      }
      int labelled = -1;
      for_each_leaf(bv, [&](int leaf) {
        if (labelled == -1 && label_[leaf] != 0) labelled = leaf;
      });
      if (labelled != -1) {
        label_[labelled] = 0;
        label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
        assign_label(labelled, 2, labelend_[labelled]);
      }
      j += jstep;
    }
  }
  label_[b] = labelend_[b] = -1;
  childs_[b].clear();
  endps_[b].clear();
  blossombase_[b] = -1;
  blossombestedges_[b].clear();
  has_bestedges_[b] = 0;
  bestedge_[b] = -1;
  unusedblossoms_.push_back(b);
}

void WeightedBlossom::augment_blossom(int b, int v) {
  int t = v;
  while (blossomparent_[t] != b) t = blossomparent_[t];
  if (t >= nvertex_) augment_blossom(t, v);
  std::vector<int>& children = childs_[b];
  std::vector<int>& endps = endps_[b];
  const int len = static_cast<int>(children.size());
  const int i = static_cast<int>(std::find(children.begin(), children.end(), t) - children.begin());
  int j = i;
  int jstep;
  int endptrick;
  if (i & 1) {
    j -= len;
    jstep = 1;
    endptrick = 0;
  } else {
    jstep = -1;
    endptrick = 1;
  }
  auto wrap = [len](int idx) { return ((idx % len) + len) % len; };
  while (j != 0) {
    j += jstep;
    t = children[wrap(j)];
    const int p = endps[wrap(j - endptrick)] ^ endptrick;
    if (t >= nvertex_) augment_blossom(t, endpoint_[p]);
    j += jstep;
    t = children[wrap(j)];
    if (t >= nvertex_) augment_blossom(t, endpoint_[p ^ 1]);
    mate_[endpoint_[p]] = p ^ 1;
    mate_[endpoint_[p ^ 1]] = p;
  }
  std::rotate(children.begin(), children.begin() + i, children.end());
  std::rotate(endps.begin(), endps.begin() + i, endps.end());
  blossombase_[b] = blossombase_[children[0]];
}

void WeightedBlossom::augment_matching(int k) {
  const int v = edges_[k].u;
  const int w = edges_[k].v;
  for (auto [s, p] : {std::pair{v, 2 * k + 1}, std::pair{w, 2 * k}}) {
    for (;;) {
      const int bs = inblossom_[s];
      if (bs >= nvertex_) augment_blossom(bs, s);
      mate_[s] = p;
      if (labelend_[bs] == -1) break;
      const int t = endpoint_[labelend_[bs]];
      const int bt = inblossom_[t];
      s = endpoint_[labelend_[bt]];
      const int j = endpoint_[labelend_[bt] ^ 1];
      if (bt >= nvertex_) augment_blossom(bt, j);
      mate_[j] = labelend_[bt];
      p = labelend_[bt] ^ 1;
    }
  }
}

std::vector<int> WeightedBlossom::run() {
  const int nedge = static_cast<int>(edges_.size());
  if (nedge == 0 || nvertex_ == 0) return std::vector<int>(nvertex_, -1);

  Weight maxweight = 0;
  for (const WeightedEdge& e : edges_) maxweight = std::max(maxweight, e.weight);

  endpoint_.resize(2 * nedge);
  for (int p = 0; p < 2 * nedge; ++p) endpoint_[p] = (p % 2 == 0) ? edges_[p / 2].u : edges_[p / 2].v;
  neighbend_.assign(nvertex_, {});
  for (int k = 0; k < nedge; ++k) {
    neighbend_[edges_[k].u].push_back(2 * k + 1);
    neighbend_[edges_[k].v].push_back(2 * k);
  }
  mate_.assign(nvertex_, -1);
  label_.assign(2 * nvertex_, 0);
  labelend_.assign(2 * nvertex_, -1);
  inblossom_.resize(nvertex_);
  for (int i = 0; i < nvertex_; ++i) inblossom_[i] = i;
  blossomparent_.assign(2 * nvertex_, -1);
  childs_.assign(2 * nvertex_, {});
  blossombase_.assign(2 * nvertex_, -1);
  for (int i = 0; i < nvertex_; ++i) blossombase_[i] = i;
  endps_.assign(2 * nvertex_, {});
  bestedge_.assign(2 * nvertex_, -1);
  blossombestedges_.assign(2 * nvertex_, {});
  has_bestedges_.assign(2 * nvertex_, 0);
  unusedblossoms_.clear();
  for (int b = 2 * nvertex_ - 1; b >= nvertex_; --b) unusedblossoms_.push_back(b);
  dualvar_.assign(2 * nvertex_, 0);
  for (int i = 0; i < nvertex_; ++i) dualvar_[i] = maxweight;
  allowedge_.assign(nedge, 0);

  for (int stage = 0; stage < nvertex_; ++stage) {
    std::fill(label_.begin(), label_.end(), 0);
    std::fill(bestedge_.begin(), bestedge_.end(), -1);
    for (int b = nvertex_; b < 2 * nvertex_; ++b) {
      blossombestedges_[b].clear();
      has_bestedges_[b] = 0;
    }
    std::fill(allowedge_.begin(), allowedge_.end(), 0);
    queue_.clear();
    for (int v = 0; v < nvertex_; ++v) {
      if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
    }

    bool augmented = false;
    for (;;) {
      while (!queue_.empty() && !augmented) {
        const int v = queue_.back();
        queue_.pop_back();
        for (int p : neighbend_[v]) {
          const int k = p / 2;
          const int w = endpoint_[p];
          if (inblossom_[v] == inblossom_[w]) continue;
          Weight kslack = 0;
          if (!allowedge_[k]) {
            kslack = slack(k);
            if (kslack <= 0) allowedge_[k] = 1;
          }
          if (allowedge_[k]) {
            if (label_[inblossom_[w]] == 0) {
              assign_label(w, 2, p ^ 1);
            } else if (label_[inblossom_[w]] == 1) {
              const int base = scan_blossom(v, w);
              if (base >= 0) {
                add_blossom(base, k);
              } else {
                augment_matching(k);
                augmented = true;
                break;
              }
            } else if (label_[w] == 0) {
              label_[w] = 2;
              labelend_[w] = p ^ 1;
            }
          } else if (label_[inblossom_[w]] == 1) {
            const int b = inblossom_[v];
            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
          } else if (label_[w] == 0) {
            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
          }
        }
      }
      if (augmented) break;

      int deltatype = -1;
      Weight delta = 0;
      int deltaedge = -1;
      int deltablossom = -1;
      if (!max_cardinality_) {
        deltatype = 1;
        delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + nvertex_);
      }
      for (int v = 0; v < nvertex_; ++v) {
        if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
          const Weight d = slack(bestedge_[v]);
          if (deltatype == -1 || d < delta) {
            delta = d;
            deltatype = 2;
            deltaedge = bestedge_[v];
          }
        }
      }
      for (int b = 0; b < 2 * nvertex_; ++b) {
        if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
          const Weight d = slack(bestedge_[b]) / 2;
          if (deltatype == -1 || d < delta) {
            delta = d;
            deltatype = 3;
            deltaedge = bestedge_[b];
          }
        }
      }
      for (int b = nvertex_; b < 2 * nvertex_; ++b) {
        if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
            (deltatype == -1 || dualvar_[b] < delta)) {
          delta = dualvar_[b];
          deltatype = 4;
          deltablossom = b;
        }
      }
      if (deltatype == -1) {
        deltatype = 1;
        delta = std::max<Weight>(0, *std::min_element(dualvar_.begin(), dualvar_.begin() + nvertex_));
      }

      for (int v = 0; v < nvertex_; ++v) {
        if (label_[inblossom_[v]] == 1) {
          dualvar_[v] -= delta;
        } else if (label_[inblossom_[v]] == 2) {
          dualvar_[v] += delta;
        }
      }
      for (int b = nvertex_; b < 2 * nvertex_; ++b) {
        if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
          if (label_[b] == 1) {
            dualvar_[b] += delta;
          } else if (label_[b] == 2) {
            dualvar_[b] -= delta;
          }
        }
      }

      if (deltatype == 1) {
        break;
      } else if (deltatype == 2) {
        allowedge_[deltaedge] = 1;
        int i = edges_[deltaedge].u;
        int j = edges_[deltaedge].v;
        if (label_[inblossom_[i]] == 0) std::swap(i, j);
        queue_.push_back(i);
      } else if (deltatype == 3) {
        allowedge_[deltaedge] = 1;
        queue_.push_back(edges_[deltaedge].u);
      } else {
        expand_blossom(deltablossom, false);
      }
    }
    if (!augmented) break;

    for (int b = nvertex_; b < 2 * nvertex_; ++b) {
      if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0) {
        expand_blossom(b, true);
      }
    }
  }

  std::vector<int> result(nvertex_, -1);
  for (int v = 0; v < nvertex_; ++v) {
    if (mate_[v] >= 0) result[v] = endpoint_[mate_[v]];
  }
  return result;
}

}  // namespace

std::vector<int> max_weight_matching(const WeightedGraph& g, bool max_cardinality) {
  g.validate();
  return WeightedBlossom(g, max_cardinality).run();
}

std::optional<Matching> max_weight_perfect_matching(const WeightedGraph& g) {
  g.validate();
  if (g.n_vertices % 2 != 0) return std::nullopt;
  if (g.n_vertices == 0) return Matching{};
  const std::vector<int> mate = WeightedBlossom(g, true).run();
  Matching m;
  for (int v = 0; v < g.n_vertices; ++v) {
    if (mate[v] < 0) return std::nullopt;
    if (mate[v] > v) m.edges.emplace_back(v, mate[v]);
  }
  return m;
}

}  // namespace ikep
