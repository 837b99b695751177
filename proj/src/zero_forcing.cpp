#include "hetnet/zero_forcing.hpp"

#include <string>

#include "hetnet/error.hpp"

namespace hetnet {

ServedChannels served_channels(const ChannelSet& channels, Tier tier) {
  ServedChannels out;
  out.reserve(channels.users(tier));
  for (std::size_t n = 0; n < channels.users(tier); ++n) out.push_back(channels.towards(tier, tier, n));
  return out;
}

Eigen::VectorXcd ZfSystem::selector(std::size_t user, std::size_t alpha) const {
  if (user >= users || alpha < 1 || alpha > block_rows()) throw InvalidInput("selector index out of range");
  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(users * block_rows()));
  z(static_cast<Eigen::Index>(user * block_rows() + alpha - 1)) = 1.0;
  return z;
}

ZfSystem build_zf_system(const ServedChannels& channels) {
  if (channels.empty() || channels.front().empty()) throw InvalidInput("ZF system needs users and antennas");
  ZfSystem sys;
  sys.users = channels.size();
  sys.antennas = channels.front().size();
  sys.taps = channels.front().front().size();
  const std::size_t L = sys.taps;
  const std::size_t M = sys.antennas;
  const std::size_t R = sys.block_rows();
  sys.stacked = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(sys.users * R), static_cast<Eigen::Index>(M * L));

  for (std::size_t n = 0; n < sys.users; ++n) {
    if (channels[n].size() != M) throw InvalidInput("antenna count differs between users");
    for (std::size_t m = 0; m < M; ++m) {
      if (channels[n][m].size() != L) throw InvalidInput("CIR length differs between links");
    }
    for (std::size_t r = 0; r < R; ++r) {
      for (std::size_t l = 0; l < L; ++l) {
        if (r < l || r - l >= L) continue;
        for (std::size_t m = 0; m < M; ++m) {
          sys.stacked(static_cast<Eigen::Index>(n * R + r), static_cast<Eigen::Index>(l * M + m)) =
              channels[n][m].taps[r - l];
        }
      }
    }
  }
  return sys;
}

Eigen::VectorXcd tap_major_to_antenna_major(const Eigen::VectorXcd& x, std::size_t antennas, std::size_t taps) {
  if (static_cast<std::size_t>(x.size()) != antennas * taps) throw InvalidInput("vector length is not M*L");
  Eigen::VectorXcd w(x.size());
  for (std::size_t l = 0; l < taps; ++l)
    for (std::size_t m = 0; m < antennas; ++m)
      w(static_cast<Eigen::Index>(m * taps + l)) = x(static_cast<Eigen::Index>(l * antennas + m));
  return w;
}

std::vector<std::vector<cplx>> unpack_beamformer(const Eigen::VectorXcd& packed, std::size_t antennas,
                                                 std::size_t taps) {
  if (static_cast<std::size_t>(packed.size()) != antennas * taps) throw InvalidInput("vector length is not M*L");
  std::vector<std::vector<cplx>> out(antennas, std::vector<cplx>(taps));
  for (std::size_t m = 0; m < antennas; ++m)
    for (std::size_t l = 0; l < taps; ++l) out[m][l] = packed(static_cast<Eigen::Index>(m * taps + l));
  return out;
}

Eigen::VectorXcd pack_beamformer(const std::vector<std::vector<cplx>>& per_antenna) {
  if (per_antenna.empty()) return {};
  const std::size_t L = per_antenna.front().size();
  Eigen::VectorXcd w(static_cast<Eigen::Index>(per_antenna.size() * L));
  for (std::size_t m = 0; m < per_antenna.size(); ++m) {
    if (per_antenna[m].size() != L) throw InvalidInput("prefilter lengths differ");
    for (std::size_t l = 0; l < L; ++l) w(static_cast<Eigen::Index>(m * L + l)) = per_antenna[m][l];
  }
  return w;
}

ZfSolver::ZfSolver(ZfSystem system) : system_(std::move(system)) {
  const auto& H = system_.stacked;
  if (H.cols() < H.rows()) {
    throw RankDeficient("ZF system is " + std::to_string(H.rows()) + "x" + std::to_string(H.cols()) +
                        "; need M*L >= N*(2L-1)");
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(H, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double cutoff = kRankTolerance * (sigma.size() > 0 ? sigma(0) : 0.0);
  rank_ = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k)
    if (sigma(k) > cutoff) ++rank_;
  if (rank_ < static_cast<std::size_t>(H.rows())) {
    throw RankDeficient("ZF system rank " + std::to_string(rank_) + " < " + std::to_string(H.rows()) + " rows");
  }
  const Eigen::VectorXd inv_sigma = sigma.cwiseInverse();
  pinv_ = svd.matrixV() * inv_sigma.asDiagonal() * svd.matrixU().adjoint();
}

Beamformer ZfSolver::beamformer(std::size_t user, std::size_t alpha) const {
  if (user >= system_.users || alpha < 1 || alpha > system_.block_rows())
    throw InvalidInput("ZF candidate index out of range");
  const Eigen::VectorXcd x = pinv_.col(static_cast<Eigen::Index>(user * system_.block_rows() + alpha - 1));
  const Eigen::VectorXcd w = tap_major_to_antenna_major(x, system_.antennas, system_.taps) / x.norm();
  Beamformer bf;
  bf.user = user;
  bf.kind = BeamformerKind::kZeroForcing;
  bf.per_antenna = unpack_beamformer(w, system_.antennas, system_.taps);
  return bf;
}

Beamformer zf_beamformer(const ZfSystem& system, std::size_t user, std::size_t alpha) {
  return ZfSolver(system).beamformer(user, alpha);
}

double gamma_metric(std::span<const Beamformer> candidates, const ServedChannels& channels, std::size_t user,
                    std::size_t alpha, double noise) {
  if (user >= channels.size() || candidates.size() != channels.size())
    throw InvalidInput("gamma metric needs one candidate beamformer per user");
  const auto own = composite_channel(candidates[user], channels[user]);
  if (alpha < 1 || alpha > own.size()) throw InvalidInput("sampled tap out of range");
  const double desired = std::norm(own.at(alpha));
  double interference = 0.0;
  for (std::size_t t = 1; t <= own.size(); ++t)
    if (t != alpha) interference += std::norm(own.at(t));
  for (std::size_t other = 0; other < candidates.size(); ++other) {
    if (other == user) continue;
    interference += composite_channel(candidates[other], channels[user]).energy();
  }
  return desired / (interference + noise);
}

ZfDesign select_taps(const ServedChannels& channels, double noise) {
  const ZfSolver solver(build_zf_system(channels));
  const auto& sys = solver.system();
  const std::size_t candidates = sys.block_rows();

  ZfDesign design;
  design.selection.gamma.assign(sys.users, std::vector<double>(candidates, 0.0));
  for (std::size_t alpha = 1; alpha <= candidates; ++alpha) {
    std::vector<Beamformer> at_alpha;
    at_alpha.reserve(sys.users);
    for (std::size_t n = 0; n < sys.users; ++n) at_alpha.push_back(solver.beamformer(n, alpha));
    for (std::size_t n = 0; n < sys.users; ++n)
      design.selection.gamma[n][alpha - 1] = gamma_metric(at_alpha, channels, n, alpha, noise);
  }

  design.selection.alpha.resize(sys.users);
  for (std::size_t n = 0; n < sys.users; ++n) {
    const auto& row = design.selection.gamma[n];
    std::size_t best = 0;
    for (std::size_t a = 1; a < row.size(); ++a)
      if (row[a] > row[best]) best = a;
    design.selection.alpha[n] = best + 1;
    design.beamformers.push_back(solver.beamformer(n, best + 1));
  }
  return design;
}

}  // namespace hetnet
