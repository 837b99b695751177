#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hetnet/channel.hpp"
#include "hetnet/time_reversal.hpp"

namespace hetnet {

/// Channels of one base station towards each of its users: [user][antenna].
using ServedChannels = std::vector<std::vector<Cir>>;

ServedChannels served_channels(const ChannelSet& channels, Tier tier);

/// Stacked block-Toeplitz convolution matrix [H_1; ...; H_N].
///
/// Block H_n is (2L-1) x (M L). Its columns are grouped by tap: block-column
/// l holds the M antenna weights for prefilter tap l, and entry
/// (row r, block-column l) is the row vector [h_1n[r-l+1] ... h_Mn[r-l+1]]
/// when 1 <= r-l+1 <= L and zero otherwise. Multiplying by a tap-major
/// weight vector gives the user's composite equivalent channel.
struct ZfSystem {
  std::size_t taps = 0;
  std::size_t antennas = 0;
  std::size_t users = 0;
  Eigen::MatrixXcd stacked;

  std::size_t block_rows() const { return 2 * taps - 1; }
  /// z_{n,alpha}: unit pulse at 1-based tap `alpha` of user n's block.
  Eigen::VectorXcd selector(std::size_t user, std::size_t alpha) const;
};

ZfSystem build_zf_system(const ServedChannels& channels);

/// Tap-major solution vector (index l*M + m) to antenna-major packing (m*L + l).
Eigen::VectorXcd tap_major_to_antenna_major(const Eigen::VectorXcd& x, std::size_t antennas, std::size_t taps);
/// Antenna-major packed vector [u_1[1..L], ..., u_M[1..L]] to per-antenna prefilters, and back.
std::vector<std::vector<cplx>> unpack_beamformer(const Eigen::VectorXcd& packed, std::size_t antennas,
                                                 std::size_t taps);
Eigen::VectorXcd pack_beamformer(const std::vector<std::vector<cplx>>& per_antenna);

/// Right inverse of a full-row-rank ZfSystem, computed once per drop and
/// shared by all (user, tap) candidates.
class ZfSolver {
 public:
  /// Singular values below kRankTolerance * sigma_max count as zero; throws
  /// RankDeficient unless the system has full row rank.
  explicit ZfSolver(ZfSystem system);

  static constexpr double kRankTolerance = 1e-12;

  const ZfSystem& system() const { return system_; }
  const Eigen::MatrixXcd& pseudo_inverse() const { return pinv_; }
  std::size_t rank() const { return rank_; }

  /// Unit-norm c * pinv(H) z_{n,alpha}, unpacked per antenna.
  Beamformer beamformer(std::size_t user, std::size_t alpha) const;

 private:
  ZfSystem system_;
  Eigen::MatrixXcd pinv_;
  std::size_t rank_ = 0;
};

Beamformer zf_beamformer(const ZfSystem& system, std::size_t user, std::size_t alpha);

/// |desired tap|^2 / (ISI + co-user energy + noise) for user n sampled at
/// `alpha`. `candidates` holds every user's beamformer built for the same alpha.
double gamma_metric(std::span<const Beamformer> candidates, const ServedChannels& channels, std::size_t user,
                    std::size_t alpha, double noise = 1.0);

struct TapSelection {
  std::vector<std::size_t> alpha;            ///< chosen 1-based tap per user
  std::vector<std::vector<double>> gamma;    ///< [user][alpha-1]
};

struct ZfDesign {
  TapSelection selection;
  std::vector<Beamformer> beamformers;
};

/// Evaluate every candidate tap 1..2L-1 and keep, per user, the one with the
/// largest gamma (ties go to the smaller tap).
ZfDesign select_taps(const ServedChannels& channels, double noise = 1.0);

}  // namespace hetnet
