#include "sharpdepth/latent.hpp"

#include <algorithm>
#include <cmath>

#include "sharpdepth/alignment.hpp"
#include "sharpdepth/errors.hpp"

namespace sharpdepth {

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

// Block mean with edge replication: samples outside the grid clamp to the
// nearest pixel, so padded blocks stay within the source value range.
double block_mean(const Grid<double>& g, int bx, int by, int factor) {
  double sum = 0.0;
  for (int dy = 0; dy < factor; ++dy) {
    for (int dx = 0; dx < factor; ++dx) {
      const int x = std::min(bx * factor + dx, g.width - 1);
      const int y = std::min(by * factor + dy, g.height - 1);
      sum += g.at(x, y);
    }
  }
  return sum / (static_cast<double>(factor) * factor);
}

}  // namespace

LatentGrid encode_grid(const Grid<double>& g, int factor, int channels) {
  if (factor < 1) throw DimensionMismatch("downsample factor must be >= 1");
  const int lw = ceil_div(g.width, factor);
  const int lh = ceil_div(g.height, factor);
  LatentGrid z(lw, lh, channels, factor);
  for (int y = 0; y < lh; ++y) {
    for (int x = 0; x < lw; ++x) {
      const double m = block_mean(g, x, y, factor);
      for (int c = 0; c < channels; ++c) z.at(c, x, y) = m;
    }
  }
  return z;
}

LatentGrid encode_latent(const DepthMap& m, int factor, int channels) {
  return encode_grid(m.values, factor, channels);
}

Grid<double> decode_to_grid(const LatentGrid& z) {
  const int f = z.downsample_factor;
  Grid<double> out(z.width * f, z.height * f);
  const double inv_c = 1.0 / static_cast<double>(z.channels);
  for (int y = 0; y < out.height; ++y) {
    // Latent cells are samples at block centers.
    const double v = (y + 0.5) / f - 0.5;
    const double vc = std::clamp(v, 0.0, static_cast<double>(z.height - 1));
    const int y0 = static_cast<int>(vc);
    const int y1 = std::min(y0 + 1, z.height - 1);
    const double fy = vc - y0;
    for (int x = 0; x < out.width; ++x) {
      const double u = (x + 0.5) / f - 0.5;
      const double uc = std::clamp(u, 0.0, static_cast<double>(z.width - 1));
      const int x0 = static_cast<int>(uc);
      const int x1 = std::min(x0 + 1, z.width - 1);
      const double fx = uc - x0;
      double acc = 0.0;
      for (int c = 0; c < z.channels; ++c) {
        const double top = z.at(c, x0, y0) * (1.0 - fx) + z.at(c, x1, y0) * fx;
        const double bot = z.at(c, x0, y1) * (1.0 - fx) + z.at(c, x1, y1) * fx;
        acc += top * (1.0 - fy) + bot * fy;
      }
      out.at(x, y) = acc * inv_c;
    }
  }
  return out;
}

DepthMap decode_latent(const LatentGrid& z) {
  Grid<double> g = decode_to_grid(z);
  DepthMap out(g.width, g.height, DepthKind::kNormalized);
  for (size_t i = 0; i < g.size(); ++i) out.values.data[i] = std::clamp(g.data[i], -1.0, 1.0);
  return out;
}

DepthMap crop(const DepthMap& m, int width, int height) {
  if (width > m.width() || height > m.height())
    throw DimensionMismatch("crop target is larger than the source");
  if (width == m.width() && height == m.height()) return m;
  DepthMap out(width, height, m.kind);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      out.values.at(x, y) = m.values.at(x, y);
      out.valid.at(x, y) = m.valid.at(x, y);
    }
  }
  return out;
}

GateMap downsample_gate(const DifferenceMap& e, int latent_width, int latent_height) {
  const int fx = ceil_div(e.width(), latent_width);
  const int fy = ceil_div(e.height(), latent_height);
  if (fx != fy) throw DimensionMismatch("latent dims imply anisotropic downsample factor");
  GateMap gate(latent_width, latent_height);
  for (int y = 0; y < latent_height; ++y) {
    for (int x = 0; x < latent_width; ++x) {
      gate.values.at(x, y) = std::clamp(block_mean(e.values, x, y, fx), 0.0, 1.0);
    }
  }
  return gate;
}

LatentGrid blend(const LatentGrid& z, const LatentGrid& noise, const GateMap& gate) {
  if (!z.same_shape(noise)) throw DimensionMismatch("latent/noise shapes differ");
  if (gate.width != z.width || gate.height != z.height)
    throw DimensionMismatch("gate dims do not match latent dims");
  LatentGrid out = z;
  for (int c = 0; c < z.channels; ++c) {
    for (int y = 0; y < z.height; ++y) {
      for (int x = 0; x < z.width; ++x) {
        const double g = gate.values.at(x, y);
        out.at(c, x, y) = g * noise.at(c, x, y) + (1.0 - g) * z.at(c, x, y);
      }
    }
  }
  return out;
}

LatentGrid gaussian_latent(int width, int height, int channels, int factor, Rng& rng) {
  LatentGrid z(width, height, channels, factor);
  for (double& v : z.values) v = rng.gaussian();
  return z;
}

Grid<double> latent_roundtrip_error(const DepthMap& m, int factor, int channels) {
  DepthMap recon;
  if (m.kind == DepthKind::kNormalized) {
    recon = crop(decode_latent(encode_latent(m, factor, channels)), m.width(), m.height());
  } else {
    auto [norm, rec] = minmax_normalize(m);
    DepthMap decoded = crop(decode_latent(encode_latent(norm, factor, channels)), m.width(), m.height());
    recon = denormalize(decoded, rec);
  }
  Grid<double> err(m.width(), m.height());
  for (size_t i = 0; i < err.size(); ++i)
    err.data[i] = std::abs(recon.values.data[i] - m.values.data[i]);
  return err;
}

}  // namespace sharpdepth
