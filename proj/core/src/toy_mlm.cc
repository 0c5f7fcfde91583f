// Copyright 2026 The radlabel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "radlabel/toy_mlm.h"

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "radlabel/error.h"

namespace radlabel {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatMap = Eigen::Map<RowMat>;
using ConstMatMap = Eigen::Map<const RowMat>;
using VecMap = Eigen::Map<Eigen::VectorXd>;
using ConstVecMap = Eigen::Map<const Eigen::VectorXd>;

}  // namespace

void validate(const ToyMlmConfig& config) {
  if (config.dim < 2) throw SpecError("dim", "must be >= 2");
  if (config.max_len < 4) throw SpecError("max_len", "must be >= 4");
  if (config.init_scale < 0.0) throw SpecError("init_scale", "must be >= 0");
}

struct ToyMlm::Layout {
  std::size_t vocab = 0, dim = 0, max_len = 0, span = 0;
  std::size_t embed = 0, pos = 0, mix = 0, wq = 0, wk = 0, wv = 0, wo = 0, bias = 0, total = 0;

  Layout(std::size_t v, const ToyMlmConfig& c)
      : vocab(v), dim(c.dim), max_len(c.max_len), span(c.local_span) {
    const std::size_t dd = dim * dim;
    embed = 0;
    pos = embed + vocab * dim;
    mix = pos + max_len * dim;
    wq = mix + span * dd;
    wk = wq + dd;
    wv = wk + dd;
    wo = wv + dd;
    bias = wo + dd;
    total = bias + vocab;
  }
};

struct ToyMlm::Activations {
  RowMat x;  // L x d
  RowMat u;  // L x d
  RowMat k;  // L x d
  RowMat v;  // L x d
  Eigen::VectorXd q, a, c, h;
};

std::size_t ToyMlm::parameter_count(std::size_t vocab_size, const ToyMlmConfig& config) {
  return Layout(vocab_size, config).total;
}

ToyMlm::Layout ToyMlm::layout() const { return Layout(vocab_.size(), config_); }

std::size_t ToyMlm::embedding_offset(TokenId id) const {
  return layout().embed + static_cast<std::size_t>(id) * config_.dim;
}

ToyMlm::ToyMlm(Vocabulary vocab, ToyMlmConfig config)
    : vocab_(std::move(vocab)), config_(config) {
  validate(config_);
  const Layout L = layout();
  params_.assign(L.total, 0.0);
  const double scale =
      config_.init_scale > 0.0 ? config_.init_scale : 1.0 / std::sqrt(static_cast<double>(config_.dim));
  std::mt19937_64 rng(config_.seed);
  std::uniform_real_distribution<double> init(-scale, scale);
  for (std::size_t i = 0; i < L.bias; ++i) params_[i] = init(rng);
}

ToyMlm::ToyMlm(Vocabulary vocab, ToyMlmConfig config, std::vector<double> parameters)
    : vocab_(std::move(vocab)), config_(config), params_(std::move(parameters)) {
  validate(config_);
  if (params_.size() != layout().total) {
    throw Error("toy_mlm checkpoint has " + std::to_string(params_.size()) +
                " parameters, expected " + std::to_string(layout().total));
  }
}

std::unique_ptr<MaskedTokenScorer> ToyMlm::clone() const {
  return std::make_unique<ToyMlm>(*this);
}

nlohmann::ordered_json ToyMlm::checkpoint() const {
  nlohmann::ordered_json doc;
  doc["kind"] = kind();
  doc["config"] = {{"dim", config_.dim},
                   {"max_len", config_.max_len},
                   {"local_span", config_.local_span},
                   {"init_scale", config_.init_scale},
                   {"seed", config_.seed}};
  doc["vocab"] = vocab_.tokens();
  doc["parameters"] = params_;
  return doc;
}

ToyMlm::Activations ToyMlm::run(std::span<const TokenId> tokens, std::size_t mask_pos) const {
  check_scoring_input(tokens, mask_pos, vocab_.size(), config_.max_len);
  const Layout Lo = layout();
  const auto d = static_cast<Eigen::Index>(Lo.dim);
  const auto len = static_cast<Eigen::Index>(tokens.size());
  const double* p = params_.data();
  ConstMatMap E(p + Lo.embed, static_cast<Eigen::Index>(Lo.vocab), d);
  ConstMatMap P(p + Lo.pos, static_cast<Eigen::Index>(Lo.max_len), d);
  ConstMatMap Wq(p + Lo.wq, d, d), Wk(p + Lo.wk, d, d), Wv(p + Lo.wv, d, d), Wo(p + Lo.wo, d, d);

  Activations act;
  act.x.resize(len, d);
  for (Eigen::Index t = 0; t < len; ++t) {
    act.x.row(t) = E.row(tokens[static_cast<std::size_t>(t)]) + P.row(t);
  }
  act.u = act.x;
  for (std::size_t j = 1; j <= Lo.span; ++j) {
    ConstMatMap C(p + Lo.mix + (j - 1) * Lo.dim * Lo.dim, d, d);
    for (Eigen::Index t = static_cast<Eigen::Index>(j); t < len; ++t) {
      act.u.row(t).noalias() +=
          (C * E.row(tokens[static_cast<std::size_t>(t) - j]).transpose()).transpose();
    }
  }
  const auto m = static_cast<Eigen::Index>(mask_pos);
  act.q = Wq * act.x.row(m).transpose();
  act.k.noalias() = act.u * Wk.transpose();
  act.v.noalias() = act.u * Wv.transpose();
  Eigen::VectorXd s = (act.k * act.q) / std::sqrt(static_cast<double>(Lo.dim));
  const double top = s.maxCoeff();
  act.a = (s.array() - top).exp();
  act.a /= act.a.sum();
  act.c = act.v.transpose() * act.a;
  act.h = act.x.row(m).transpose() + Wo * act.c;
  return act;
}

std::vector<double> ToyMlm::forward(std::span<const TokenId> tokens, std::size_t mask_pos) const {
  const Activations act = run(tokens, mask_pos);
  const Layout Lo = layout();
  ConstMatMap E(params_.data() + Lo.embed, static_cast<Eigen::Index>(Lo.vocab),
                static_cast<Eigen::Index>(Lo.dim));
  std::vector<double> out(Lo.vocab);
  // Row-wise dots so every logit is bit-identical to forward_ids().
  for (std::size_t w = 0; w < Lo.vocab; ++w) {
    out[w] = E.row(static_cast<Eigen::Index>(w)).dot(act.h.transpose()) + params_[Lo.bias + w];
  }
  return out;
}

std::vector<double> ToyMlm::forward_ids(std::span<const TokenId> tokens, std::size_t mask_pos,
                                        std::span<const TokenId> ids) const {
  const Activations act = run(tokens, mask_pos);
  const Layout Lo = layout();
  const auto d = static_cast<Eigen::Index>(Lo.dim);
  std::vector<double> out;
  out.reserve(ids.size());
  for (TokenId id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= Lo.vocab) {
      throw Error("token id " + std::to_string(id) + " outside vocabulary");
    }
    ConstMatMap E(params_.data() + Lo.embed, static_cast<Eigen::Index>(Lo.vocab), d);
    out.push_back(E.row(id).dot(act.h.transpose()) +
                  params_[Lo.bias + static_cast<std::size_t>(id)]);
  }
  return out;
}

void ToyMlm::backward(std::span<const TokenId> tokens, std::size_t mask_pos,
                      std::span<const TokenId> ids, std::span<const double> dlogits,
                      std::span<double> grad) const {
  if (grad.size() != params_.size()) throw Error("gradient buffer has the wrong size");
  if (ids.size() != dlogits.size()) throw Error("ids and dlogits differ in length");
  const Activations act = run(tokens, mask_pos);
  const Layout Lo = layout();
  const auto d = static_cast<Eigen::Index>(Lo.dim);
  const auto len = static_cast<Eigen::Index>(tokens.size());
  const auto m = static_cast<Eigen::Index>(mask_pos);
  const double* p = params_.data();
  double* g = grad.data();
  ConstMatMap E(p + Lo.embed, static_cast<Eigen::Index>(Lo.vocab), d);
  ConstMatMap Wq(p + Lo.wq, d, d), Wk(p + Lo.wk, d, d), Wv(p + Lo.wv, d, d), Wo(p + Lo.wo, d, d);
  MatMap dE(g + Lo.embed, static_cast<Eigen::Index>(Lo.vocab), d);
  MatMap dP(g + Lo.pos, static_cast<Eigen::Index>(Lo.max_len), d);
  MatMap dWq(g + Lo.wq, d, d), dWk(g + Lo.wk, d, d), dWv(g + Lo.wv, d, d), dWo(g + Lo.wo, d, d);

  // Output layer (tied embeddings + bias).
  Eigen::VectorXd dh = Eigen::VectorXd::Zero(d);
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const double gk = dlogits[k];
    if (gk == 0.0) continue;
    const auto id = static_cast<Eigen::Index>(ids[k]);
    dh.noalias() += gk * E.row(id).transpose();
    dE.row(id).noalias() += gk * act.h.transpose();
    g[Lo.bias + static_cast<std::size_t>(id)] += gk;
  }

  // h = x_m + Wo c
  RowMat dx = RowMat::Zero(len, d);
  dx.row(m) += dh.transpose();
  dWo.noalias() += dh * act.c.transpose();
  const Eigen::VectorXd dc = Wo.transpose() * dh;

  // c = sum_t a_t v_t ; a = softmax(s) ; s_t = q . k_t / sqrt(d)
  const Eigen::VectorXd da = act.v * dc;
  const double mean = act.a.dot(da);
  const Eigen::VectorXd ds = act.a.array() * (da.array() - mean);
  const double inv = 1.0 / std::sqrt(static_cast<double>(Lo.dim));
  const Eigen::VectorXd dq = inv * (act.k.transpose() * ds);
  const RowMat dK = inv * ds * act.q.transpose();
  const RowMat dV = act.a * dc.transpose();

  dWq.noalias() += dq * act.x.row(m);
  dx.row(m) += (Wq.transpose() * dq).transpose();
  dWk.noalias() += dK.transpose() * act.u;
  dWv.noalias() += dV.transpose() * act.u;
  const RowMat du = dK * Wk + dV * Wv;

  // u_t = x_t + sum_j C_j E[tok_{t-j}]
  dx += du;
  for (std::size_t j = 1; j <= Lo.span; ++j) {
    ConstMatMap C(p + Lo.mix + (j - 1) * Lo.dim * Lo.dim, d, d);
    MatMap dC(g + Lo.mix + (j - 1) * Lo.dim * Lo.dim, d, d);
    for (Eigen::Index t = static_cast<Eigen::Index>(j); t < len; ++t) {
      const auto prev = static_cast<Eigen::Index>(tokens[static_cast<std::size_t>(t) - j]);
      dC.noalias() += du.row(t).transpose() * E.row(prev);
      dE.row(prev).noalias() += (C.transpose() * du.row(t).transpose()).transpose();
    }
  }

  // x_t = E[tok_t] + P[t]
  for (Eigen::Index t = 0; t < len; ++t) {
    dE.row(tokens[static_cast<std::size_t>(t)]) += dx.row(t);
    dP.row(t) += dx.row(t);
  }
}

}  // namespace radlabel
