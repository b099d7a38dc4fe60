#ifndef FPGRP_CANCEL_HPP_
#define FPGRP_CANCEL_HPP_

// Metric small cancellation: pieces, the C'(1/m) checker and Dehn's
// algorithm for C'(1/6) presentations.
//
// A piece is a nonempty word occurring at two distinct positions of the
// symmetrized closure: two different cyclic words, or the same cyclic word at
// two different rotation offsets. The metric condition is strict: every piece
// p inside a relator r satisfies |p| * m < |r|.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "json.hpp"
#include "presentation.hpp"
#include "word.hpp"

namespace fpgrp {

  namespace detail {

    /// Suffix array of `s` (values in [1, alphabet)), by prefix doubling over
    /// cyclic shifts with a 0 sentinel appended internally.
    inline std::vector<std::int32_t> suffix_array(
        std::vector<std::int32_t> const& text,
        std::int32_t                     alphabet) {
      std::vector<std::int32_t> s(text);
      s.push_back(0);
      auto const                n = static_cast<std::int32_t>(s.size());
      std::vector<std::int32_t> p(n), c(n), pn(n), cn(n);
      std::vector<std::int32_t> cnt(std::max(alphabet, n) + 1, 0);
      for (auto x : s) {
        ++cnt[x];
      }
      for (std::size_t i = 1; i < cnt.size(); ++i) {
        cnt[i] += cnt[i - 1];
      }
      for (std::int32_t i = n - 1; i >= 0; --i) {
        p[--cnt[s[i]]] = i;
      }
      std::int32_t classes = 1;
      c[p[0]]              = 0;
      for (std::int32_t i = 1; i < n; ++i) {
        if (s[p[i]] != s[p[i - 1]]) {
          ++classes;
        }
        c[p[i]] = classes - 1;
      }
      for (std::int32_t h = 1; h < n && classes < n; h <<= 1) {
        for (std::int32_t i = 0; i < n; ++i) {
          pn[i] = p[i] - h;
          if (pn[i] < 0) {
            pn[i] += n;
          }
        }
        std::fill(cnt.begin(), cnt.begin() + classes, 0);
        for (std::int32_t i = 0; i < n; ++i) {
          ++cnt[c[pn[i]]];
        }
        for (std::int32_t i = 1; i < classes; ++i) {
          cnt[i] += cnt[i - 1];
        }
        for (std::int32_t i = n - 1; i >= 0; --i) {
          p[--cnt[c[pn[i]]]] = pn[i];
        }
        cn[p[0]] = 0;
        classes  = 1;
        for (std::int32_t i = 1; i < n; ++i) {
          auto const a0 = c[p[i]], b0 = c[p[i - 1]];
          auto const a1 = c[(p[i] + h) % n], b1 = c[(p[i - 1] + h) % n];
          if (a0 != b0 || a1 != b1) {
            ++classes;
          }
          cn[p[i]] = classes - 1;
        }
        c.swap(cn);
      }
      p.erase(p.begin());  // drop the sentinel suffix
      return p;
    }

    /// lcp[i] = lcp(sa[i-1], sa[i]); lcp[0] = 0 (Kasai).
    inline std::vector<std::int32_t> lcp_array(
        std::vector<std::int32_t> const& s,
        std::vector<std::int32_t> const& sa) {
      auto const                n = sa.size();
      std::vector<std::int32_t> rank(n), lcp(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        rank[sa[i]] = static_cast<std::int32_t>(i);
      }
      std::size_t k = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (rank[i] == 0) {
          k = 0;
          continue;
        }
        std::size_t j = sa[rank[i] - 1];
        while (i + k < n && j + k < n && s[i + k] == s[j + k]) {
          ++k;
        }
        lcp[rank[i]] = static_cast<std::int32_t>(k);
        if (k > 0) {
          --k;
        }
      }
      return lcp;
    }

    /// Relators grouped into cyclic-word classes (a relator, its inverse and
    /// their rotations form one class).
    struct CyclicClasses {
      std::vector<Word>        cores;           // one per class
      std::vector<std::size_t> representative;  // first relator of the class
      std::vector<std::size_t> class_of;        // per relator
      std::vector<bool>        inverted;        // relator is inverse of core

      explicit CyclicClasses(Presentation const& p) {
        std::map<Word, std::size_t> index;
        for (std::size_t i = 0; i < p.num_relators(); ++i) {
          Word const core = cyclic_reduce(p.relator(i)).core;
          if (core.empty()) {
            throw PreconditionError("relator " + std::to_string(i + 1)
                                    + " is trivial after cyclic reduction");
          }
          Word const a   = least_rotation(core);
          Word const b   = least_rotation(inverse(core));
          Word const key = std::min(a, b);
          auto [it, fresh] = index.emplace(key, cores.size());
          if (fresh) {
            cores.push_back(core);
            representative.push_back(i);
            inverted.push_back(false);
          } else {
            Word const& rep = cores[it->second];
            inverted.push_back(least_rotation(rep) != a);
          }
          class_of.push_back(it->second);
        }
      }
    };

  }  // namespace detail

  struct PieceOccurrence {
    std::size_t relator  = 0;      // index into the presentation's relators
    bool        inverted = false;  // occurrence lies in the inverse relator
    std::size_t offset   = 0;      // start position in the cyclic core
  };

  struct PieceWitness {
    Word            piece;
    PieceOccurrence first;
    PieceOccurrence second;
  };

  struct RelatorPieces {
    std::size_t                 length    = 0;  // cyclic core length
    std::size_t                 max_piece = 0;
    std::optional<PieceWitness> witness;
    bool                        proper_power = false;
    bool                        satisfied    = true;
  };

  struct PieceReport {
    std::size_t                m       = 0;
    bool                       verdict = true;
    std::vector<RelatorPieces> relators;  // one per presentation relator
    std::optional<std::size_t> first_failure;
    std::vector<std::string>   warnings;

    /// Largest m' for which the computed pieces satisfy C'(1/m'); 0 if none
    /// (SIZE_MAX when no relator has a piece).
    std::size_t best_m() const {
      std::size_t best = std::numeric_limits<std::size_t>::max();
      for (auto const& r : relators) {
        if (r.max_piece > 0) {
          best = std::min(best, (r.length - 1) / r.max_piece);
        }
      }
      return best;
    }
  };

  /// Maximum piece length in every relator, with witnesses. Relators are
  /// grouped into cyclic classes first so duplicated or inverted relators do
  /// not create spurious pieces.
  inline PieceReport check_metric(Presentation const& p, std::size_t m) {
    if (m < 2) {
      throw DomainError("check_metric: m must be at least 2");
    }
    detail::CyclicClasses const cls(p);
    auto const                  nclasses = cls.cores.size();
    auto const                  ngens    = p.num_generators();

    // Segments: class k, orientation o -> word W written twice, then a unique
    // separator. Letters map above the separators.
    struct Segment {
      std::size_t start, length, cls;
      bool        inverted;
    };
    std::vector<Segment>      segments;
    std::vector<std::int32_t> text;
    std::vector<std::int32_t> seg_of;  // per text index, -1 if not a position
    std::int32_t const        nsep = static_cast<std::int32_t>(2 * nclasses);
    std::int32_t              sep  = 1;
    auto const                code = [&](Letter l) {
      return nsep + 1
             + static_cast<std::int32_t>(2 * generator_of(l)
                                         + (is_inverse(l) ? 1 : 0));
    };
    for (std::size_t k = 0; k < nclasses; ++k) {
      for (bool inv : {false, true}) {
        Word const w = inv ? inverse(cls.cores[k]) : cls.cores[k];
        segments.push_back({text.size(), w.size(), k, inv});
        for (int rep = 0; rep < 2; ++rep) {
          for (Letter l : w) {
            seg_of.push_back(rep == 0 ? static_cast<std::int32_t>(
                                 segments.size() - 1)
                                      : -1);
            text.push_back(code(l));
          }
        }
        seg_of.push_back(-1);
        text.push_back(sep++);
      }
    }
    std::int32_t const alphabet = nsep + 1 + static_cast<std::int32_t>(2 * ngens);

    std::vector<std::size_t>                     best(nclasses, 0);
    std::vector<std::pair<std::size_t, std::size_t>> best_pair(nclasses);
    if (!text.empty()) {
      auto const sa  = detail::suffix_array(text, alphabet);
      auto const lcp = detail::lcp_array(text, sa);
      std::vector<std::int32_t> rank(sa.size());
      for (std::size_t i = 0; i < sa.size(); ++i) {
        rank[sa[i]] = static_cast<std::int32_t>(i);
      }
      auto const n = sa.size();
      for (std::size_t sidx = 0; sidx < segments.size(); ++sidx) {
        auto const& S = segments[sidx];
        for (std::size_t o = 0; o < S.length; ++o) {
          std::size_t const pos   = S.start + o;
          std::size_t       bestp = 0;
          std::size_t       bestq = 0;
          for (int dir : {-1, 1}) {
            std::size_t j      = static_cast<std::size_t>(rank[pos]);
            std::size_t runmin = std::numeric_limits<std::size_t>::max();
            while (bestp < S.length) {
              if (dir < 0) {
                if (j == 0) {
                  break;
                }
                runmin = std::min<std::size_t>(runmin, lcp[j]);
                --j;
              } else {
                if (j + 1 >= n) {
                  break;
                }
                runmin = std::min<std::size_t>(runmin, lcp[j + 1]);
                ++j;
              }
              if (runmin <= bestp) {
                break;
              }
              auto const q  = static_cast<std::size_t>(sa[j]);
              auto const sq = seg_of[q];
              if (sq < 0) {
                continue;
              }
              std::size_t cand
                  = std::min({runmin, S.length, segments[sq].length});
              if (cand > bestp) {
                bestp = cand;
                bestq = q;
              }
            }
          }
          if (bestp > best[S.cls]) {
            best[S.cls]      = bestp;
            best_pair[S.cls] = {pos, bestq};
          }
        }
      }
    }

    auto occurrence = [&](std::size_t textpos) {
      auto const& S = segments[seg_of[textpos]];
      return PieceOccurrence{
          cls.representative[S.cls], S.inverted, textpos - S.start};
    };

    PieceReport report;
    report.m = m;
    std::vector<RelatorPieces> per_class(nclasses);
    for (std::size_t k = 0; k < nclasses; ++k) {
      auto& rp        = per_class[k];
      rp.length       = cls.cores[k].size();
      rp.max_piece    = best[k];
      rp.proper_power = proper_power_root(cls.cores[k]).has_value();
      rp.satisfied    = rp.max_piece * m < rp.length;
      if (best[k] > 0) {
        auto const [a, b] = best_pair[k];
        PieceWitness w;
        w.piece  = Word(text.begin() + a, text.begin() + a + best[k]);
        Word dec;
        for (auto c : w.piece) {
          auto const v = c - nsep - 1;
          dec.push_back(letter(static_cast<std::size_t>(v / 2), v % 2 == 1));
        }
        w.piece   = dec;
        w.first   = occurrence(a);
        w.second  = occurrence(b);
        rp.witness = w;
      }
    }
    for (std::size_t i = 0; i < p.num_relators(); ++i) {
      auto const k = cls.class_of[i];
      report.relators.push_back(per_class[k]);
      if (per_class[k].proper_power && cls.representative[k] == i) {
        report.warnings.push_back(
            "relator " + std::to_string(i + 1)
            + " is a proper power; its self-overlaps count as pieces");
      }
      if (!per_class[k].satisfied && !report.first_failure) {
        report.first_failure = i;
      }
    }
    report.verdict = !report.first_failure.has_value();
    return report;
  }

  inline nlohmann::json to_json(PieceReport const& r, Presentation const& p) {
    auto rels = nlohmann::json::array();
    for (std::size_t i = 0; i < r.relators.size(); ++i) {
      auto const&    rp = r.relators[i];
      nlohmann::json j{{"relator", i + 1},
                       {"length", rp.length},
                       {"max_piece", rp.max_piece},
                       {"proper_power", rp.proper_power},
                       {"satisfied", rp.satisfied}};
      if (rp.witness) {
        auto occ = [](PieceOccurrence const& o) {
          return nlohmann::json{{"relator", o.relator + 1},
                                {"inverted", o.inverted},
                                {"offset", o.offset}};
        };
        j["witness"] = {{"piece", p.format(rp.witness->piece)},
                        {"first", occ(rp.witness->first)},
                        {"second", occ(rp.witness->second)}};
      }
      rels.push_back(std::move(j));
    }
    return {{"m", r.m},
            {"verdict", r.verdict},
            {"relators", rels},
            {"warnings", r.warnings}};
  }

  ////////////////////////////////////////////////////////////////////////
  // Dehn's algorithm
  ////////////////////////////////////////////////////////////////////////

  struct DehnStep {
    Word        before;    // cyclically reduced
    std::size_t rotation;  // before is rotated to start at this offset
    Word        element;   // symmetrized relator s = u v, u = prefix matched
    std::size_t source_relator;
    std::size_t matched;  // |u| > |s| / 2
    Word        after;    // cyclic reduction of v^-1 followed by the rest
  };

  struct DehnTrace {
    Word                  input;
    Word                  start;  // cyclic core of the input
    std::vector<DehnStep> steps;
    Word                  final_word;
  };

  struct DehnResult {
    bool      trivial = false;
    DehnTrace trace;
  };

  /// Dehn's algorithm on cyclic words, leftmost longest match first. The
  /// constructor refuses presentations that do not pass check_metric(p, 6).
  class DehnSolver {
   public:
    explicit DehnSolver(Presentation p) : p_(std::move(p)) {
      auto const report = check_metric(p_, 6);
      if (!report.verdict) {
        throw PreconditionError(
            "Dehn's algorithm needs a C'(1/6) presentation; relator "
            + std::to_string(*report.first_failure + 1)
            + " has a piece of length "
            + std::to_string(report.relators[*report.first_failure].max_piece)
            + " against length "
            + std::to_string(report.relators[*report.first_failure].length));
      }
      build_index();
    }

    Presentation const& presentation() const noexcept {
      return p_;
    }

    DehnResult solve(Word const& w) const {
      DehnResult res;
      res.trace.input = w;
      Word cur        = cyclic_reduce(w).core;
      res.trace.start = cur;
      while (!cur.empty()) {
        auto m = find_match(cur);
        if (!m) {
          break;
        }
        DehnStep step;
        step.before         = cur;
        step.rotation       = m->start;
        step.element        = rotate(entries_[m->entry], m->offset);
        step.source_relator = origin_[m->entry];
        step.matched        = m->length;
        Word const rot      = rotate(cur, m->start);
        Word       next     = inverse(
            Word(step.element.begin() + m->length, step.element.end()));
        next.append(Word(rot.begin() + m->length, rot.end()));
        step.after = cyclic_reduce(next).core;
        cur        = step.after;
        res.trace.steps.push_back(std::move(step));
      }
      res.trace.final_word = cur;
      res.trivial          = cur.empty();
      return res;
    }

    /// Replays a trace: every step must use a genuine symmetrized relator,
    /// match more than half of it, and produce the recorded word.
    bool verify(DehnTrace const& t) const {
      if (t.start != cyclic_reduce(t.input).core) {
        return false;
      }
      Word cur = t.start;
      for (auto const& s : t.steps) {
        if (s.before != cur || s.before.empty()) {
          return false;
        }
        if (!is_symmetrized_element(s.element)) {
          return false;
        }
        if (2 * s.matched <= s.element.size() || s.matched > s.before.size()) {
          return false;
        }
        Word const rot = rotate(s.before, s.rotation);
        if (!std::equal(s.element.begin(),
                        s.element.begin() + s.matched,
                        rot.begin())) {
          return false;
        }
        Word next = inverse(Word(s.element.begin() + s.matched, s.element.end()));
        next.append(Word(rot.begin() + s.matched, rot.end()));
        if (cyclic_reduce(next).core != s.after
            || s.after.size() >= s.before.size()) {
          return false;
        }
        cur = s.after;
      }
      return cur == t.final_word;
    }

   private:
    struct Match {
      std::size_t start, entry, offset, length;
    };

    static constexpr std::uint64_t kMod = (1ULL << 61) - 1;
    static constexpr std::uint64_t kBase = 1000003ULL;

    static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
      unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
      std::uint64_t     lo = static_cast<std::uint64_t>(r & kMod);
      std::uint64_t     hi = static_cast<std::uint64_t>(r >> 61);
      std::uint64_t     s  = lo + hi;
      return s >= kMod ? s - kMod : s;
    }

    static std::uint64_t value(Letter l) {
      return static_cast<std::uint64_t>(static_cast<std::int64_t>(l) + (1 << 30));
    }

    // Hashes of every length-k window of the cyclic word w.
    std::vector<std::uint64_t> window_hashes(Word const& w) const {
      auto const                 n = w.size();
      std::vector<std::uint64_t> out(n);
      std::uint64_t              h = 0;
      for (std::size_t i = 0; i < k_; ++i) {
        h = (mulmod(h, kBase) + value(w[i % n])) % kMod;
      }
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = h;
        // add w[i + k], drop w[i]
        std::uint64_t const drop = mulmod(value(w[i]), pow_k_);
        h = (mulmod(h, kBase) + value(w[(i + k_) % n])) % kMod;
        h = (h + kMod - drop) % kMod;
      }
      return out;
    }

    void build_index() {
      detail::CyclicClasses const cls(p_);
      for (std::size_t k = 0; k < cls.cores.size(); ++k) {
        entries_.push_back(cls.cores[k]);
        origin_.push_back(cls.representative[k]);
        entries_.push_back(inverse(cls.cores[k]));
        origin_.push_back(cls.representative[k]);
      }
      k_ = std::numeric_limits<std::size_t>::max();
      for (auto const& e : entries_) {
        k_ = std::min(k_, e.size() / 2 + 1);
      }
      if (entries_.empty()) {
        return;
      }
      pow_k_ = 1;
      for (std::size_t i = 0; i < k_; ++i) {
        pow_k_ = mulmod(pow_k_, kBase);
      }
      for (std::size_t e = 0; e < entries_.size(); ++e) {
        auto const h = window_hashes(entries_[e]);
        for (std::size_t o = 0; o < h.size(); ++o) {
          index_[h[o]].emplace_back(e, o);
        }
      }
    }

    bool is_symmetrized_element(Word const& s) const {
      if (s.empty()) {
        return false;
      }
      auto const key = least_rotation(s);
      for (auto const& e : entries_) {
        if (e.size() == s.size() && least_rotation(e) == key) {
          return true;
        }
      }
      return false;
    }

    std::optional<Match> find_match(Word const& w) const {
      auto const n = w.size();
      if (entries_.empty() || n < k_) {
        return std::nullopt;
      }
      auto const hashes = window_hashes(w);
      for (std::size_t i = 0; i < n; ++i) {
        auto it = index_.find(hashes[i]);
        if (it == index_.end()) {
          continue;
        }
        std::optional<Match> best;
        for (auto const& [e, o] : it->second) {
          Word const& c   = entries_[e];
          auto const  cap = std::min(n, c.size());
          std::size_t len = 0;
          while (len < cap && w[(i + len) % n] == c[(o + len) % c.size()]) {
            ++len;
          }
          if (2 * len > c.size() && (!best || len > best->length)) {
            best = Match{i, e, o, len};
          }
        }
        if (best) {
          return best;
        }
      }
      return std::nullopt;
    }

    Presentation      p_;
    std::vector<Word> entries_;
    std::vector<std::size_t> origin_;
    std::size_t       k_     = 0;
    std::uint64_t     pow_k_ = 1;
    std::unordered_map<std::uint64_t,
                       std::vector<std::pair<std::size_t, std::size_t>>>
        index_;
  };

  /// One-shot form of DehnSolver::solve.
  inline DehnResult dehn_is_trivial(Word const& w, Presentation const& p) {
    return DehnSolver(p).solve(w);
  }

}  // namespace fpgrp

#endif  // FPGRP_CANCEL_HPP_
