#include "ssa/sau_array.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

namespace ssa {

namespace {

// Bits packed LSB-first: bits[0] is the least significant nibble bit.
std::string pack_hex(const std::vector<Bit>& bits) {
  if (bits.empty()) return "-";
  const std::size_t digits = (bits.size() + 3) / 4;
  std::string out(digits, '0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (!bits[i]) continue;
    const std::size_t digit = i / 4;
    char& c = out[digits - 1 - digit];
    int v = (c <= '9') ? c - '0' : c - 'a' + 10;
    v |= 1 << (i % 4);
    c = v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10);
  }
  return "0x" + out;
}

std::string pack_hex_u8(const std::vector<std::uint8_t>& vals) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(vals.size() * 2);
  for (std::uint8_t v : vals) {
    out.push_back(digits[v >> 4]);
    out.push_back(digits[v & 0xF]);
  }
  return out;
}

}  // namespace

PortStreams stream_schedule(const SpikeMatrix& q_t, const SpikeMatrix& k_t,
                            const SpikeMatrix& v_t) {
  if (!q_t.same_shape(k_t) || !q_t.same_shape(v_t)) {
    throw std::invalid_argument("stream_schedule: Q/K/V shapes differ");
  }
  const std::size_t n = q_t.rows();
  const std::size_t key_dim = q_t.cols();
  PortStreams streams;
  streams.cycles.resize(key_dim);
  for (std::size_t c = 0; c < key_dim; ++c) {
    PortBits& ports = streams.cycles[c];
    ports.q.resize(n);
    ports.k.resize(n);
    ports.v.resize(n);
    for (std::size_t i = 0; i < n; ++i) ports.q[i] = q_t(i, c);
    for (std::size_t j = 0; j < n; ++j) {
      ports.k[j] = k_t(j, c);
      ports.v[j] = v_t(j, c);
    }
  }
  return streams;
}

SsaBlock::SsaBlock(std::size_t tokens, std::size_t key_dim, std::uint64_t global_seed,
                   bool shared_score_rng)
    : tokens_(tokens),
      key_dim_(key_dim),
      bank_(global_seed, tokens, shared_score_rng) {
  if (tokens == 0 || key_dim == 0) {
    throw std::invalid_argument("SsaBlock: dimensions must be positive");
  }
  if (key_dim > 256) {
    throw std::invalid_argument("SsaBlock: key_dim exceeds the UINT8 counter range");
  }
  saus_.resize(tokens * tokens);
  for (SauState& sau : saus_) {
    sau.v_fifo.assign(key_dim, 0);
    sau.fifo_pos = 0;
  }
}

void SsaBlock::clock(const ClockInput& in, std::vector<Bit>* out_column, CycleTrace* trace) {
  if (in.acc && (in.acc->q.size() != tokens_ || in.acc->k.size() != tokens_ ||
                 in.acc->v.size() != tokens_)) {
    throw std::invalid_argument("SsaBlock: port width mismatch");
  }
  CycleRecord rec;
  if (trace && trace->capture_records) {
    rec.cycle = cycle_;
    rec.acc_step = in.acc_step;
    rec.ws_step = in.ws_step;
    rec.attn_d = in.ws ? in.ws_d : -1;
    if (in.acc) {
      rec.q = in.acc->q;
      rec.k = in.acc->k;
      rec.v = in.acc->v;
    }
  }

  // Value delay line shifts every clock; idle clocks shift in zeros, which
  // keeps the feed-through offset at exactly key_dim cycles in both modes.
  std::vector<Bit> fifo_out(saus_.size());
  for (std::size_t idx = 0; idx < saus_.size(); ++idx) {
    SauState& sau = saus_[idx];
    const std::size_t j = idx % tokens_;
    const Bit v_in = in.acc ? in.acc->v[j] : 0;
    fifo_out[idx] = sau.v_fifo[sau.fifo_pos];
    sau.v_fifo[sau.fifo_pos] = v_in;
    sau.fifo_pos = (sau.fifo_pos + 1) % key_dim_;
  }

  // Accumulate side: one AND into each counter.
  if (in.acc) {
    for (std::size_t i = 0; i < tokens_; ++i) {
      for (std::size_t j = 0; j < tokens_; ++j) {
        SauState& sau = saus_[i * tokens_ + j];
        sau.counter = static_cast<std::uint8_t>(sau.counter + sc_and(in.acc->q[i], in.acc->k[j]));
        if (sau.counter > key_dim_) {
          throw std::logic_error("SsaBlock: SAU counter overflow (schedule bug)");
        }
        if (trace) {
          ++trace->and_evals;
          if (sau.counter > trace->max_counter) trace->max_counter = sau.counter;
        }
      }
    }
  }

  // Weighted-sum side: held score bit AND delayed value bit, row adder,
  // count-to-Bernoulli re-encode per row.
  if (in.ws) {
    if (in.ws_d < 0 || static_cast<std::size_t>(in.ws_d) >= key_dim_) {
      throw std::logic_error("SsaBlock: weighted-sum column index out of range");
    }
    for (std::size_t i = 0; i < tokens_; ++i) {
      std::uint32_t row_sum = 0;
      for (std::size_t j = 0; j < tokens_; ++j) {
        const std::size_t idx = i * tokens_ + j;
        row_sum += sc_and(saus_[idx].s_reg, fifo_out[idx]);
        if (trace) ++trace->and_evals;
      }
      const Bit bit = encode_count(row_sum, static_cast<std::uint32_t>(tokens_), bank_.attn_rng(i));
      if (trace) {
        ++trace->row_adds;
        ++trace->rng_draws;
      }
      if (out_column) out_column->push_back(bit);
      if (trace && trace->capture_records) rec.attn_bits.push_back(bit);
    }
  }

  if (trace && trace->capture_records && trace->full_dump) {
    rec.counters.resize(saus_.size());
    for (std::size_t idx = 0; idx < saus_.size(); ++idx) rec.counters[idx] = saus_[idx].counter;
  }

  // Phase boundary at clock end: counters re-encode into the held score
  // bits (row-major, matching the functional model's canonical order) and
  // clear for the next accumulate window.
  if (in.boundary) {
    for (std::size_t i = 0; i < tokens_; ++i) {
      for (std::size_t j = 0; j < tokens_; ++j) {
        SauState& sau = saus_[i * tokens_ + j];
        sau.s_reg = encode_count(sau.counter, static_cast<std::uint32_t>(key_dim_),
                                 bank_.score_rng(i, j));
        sau.counter = 0;
        if (trace) ++trace->rng_draws;
        if (trace && trace->capture_records) rec.s_bits.push_back(sau.s_reg);
      }
    }
  }

  ++cycle_;
  if (trace) {
    ++trace->cycles;
    if (trace->capture_records) trace->records.push_back(std::move(rec));
  }
}

SpikeMatrix SsaBlock::run_timestep(const SpikeMatrix& q_t, const SpikeMatrix& k_t,
                                   const SpikeMatrix& v_t, CycleTrace* trace) {
  if (q_t.rows() != tokens_ || q_t.cols() != key_dim_) {
    throw std::invalid_argument("SsaBlock::run_timestep: Q must be tokens x key_dim");
  }
  if (trace) {
    trace->tokens = tokens_;
    trace->key_dim = key_dim_;
  }
  const PortStreams streams = stream_schedule(q_t, k_t, v_t);

  // Accumulate phase.
  for (std::size_t c = 0; c < key_dim_; ++c) {
    ClockInput in;
    in.acc = &streams.cycles[c];
    in.acc_step = 0;
    in.boundary = (c == key_dim_ - 1);
    clock(in, nullptr, trace);
  }
  // Weighted-sum phase; row i emits output column d at cycle offset d.
  SpikeMatrix attn(tokens_, key_dim_);
  for (std::size_t d = 0; d < key_dim_; ++d) {
    ClockInput in;
    in.ws = true;
    in.ws_step = 0;
    in.ws_d = static_cast<int>(d);
    std::vector<Bit> column;
    clock(in, &column, trace);
    for (std::size_t i = 0; i < tokens_; ++i) attn.set(i, d, column[i]);
  }
  return attn;
}

std::vector<SpikeMatrix> SsaBlock::run_stream(const std::vector<QkvEncoder::Output>& steps,
                                              bool pipelined, CycleTrace* trace) {
  if (trace) {
    trace->tokens = tokens_;
    trace->key_dim = key_dim_;
  }
  std::vector<SpikeMatrix> outputs;
  outputs.reserve(steps.size());

  if (!pipelined) {
    for (const QkvEncoder::Output& step : steps) {
      outputs.push_back(run_timestep(step.q, step.k, step.v, trace));
    }
    return outputs;
  }

  if (steps.empty()) return outputs;
  const std::size_t t_total = steps.size();

  std::vector<PortStreams> streams;
  streams.reserve(t_total);
  for (const QkvEncoder::Output& step : steps) {
    if (step.q.rows() != tokens_ || step.q.cols() != key_dim_) {
      throw std::invalid_argument("SsaBlock::run_stream: Q must be tokens x key_dim");
    }
    streams.push_back(stream_schedule(step.q, step.k, step.v));
  }
  for (std::size_t t = 0; t < t_total; ++t) outputs.emplace_back(tokens_, key_dim_);

  // Step t accumulates during clocks [t*key_dim, (t+1)*key_dim) and its
  // weighted-sum runs during the next key_dim clocks, overlapped with the
  // accumulate phase of step t+1. Total clocks: key_dim * (T + 1).
  const std::uint64_t total_cycles = static_cast<std::uint64_t>(key_dim_) * (t_total + 1);
  for (std::uint64_t c = 0; c < total_cycles; ++c) {
    const std::uint64_t block_idx = c / key_dim_;
    const std::size_t offset = static_cast<std::size_t>(c % key_dim_);
    ClockInput in;
    if (block_idx < t_total) {
      in.acc = &streams[block_idx].cycles[offset];
      in.acc_step = static_cast<std::int64_t>(block_idx);
      in.boundary = (offset == key_dim_ - 1);
    }
    std::vector<Bit> column;
    if (block_idx >= 1) {
      in.ws = true;
      in.ws_step = static_cast<std::int64_t>(block_idx - 1);
      in.ws_d = static_cast<int>(offset);
    }
    clock(in, in.ws ? &column : nullptr, trace);
    if (in.ws) {
      SpikeMatrix& attn = outputs[static_cast<std::size_t>(in.ws_step)];
      for (std::size_t i = 0; i < tokens_; ++i) attn.set(i, static_cast<std::size_t>(in.ws_d), column[i]);
    }
  }
  return outputs;
}

void write_trace(std::ostream& os, const CycleTrace& trace) {
  os << "# ssa-trace v1\n";
  os << "# tokens=" << trace.tokens << " key_dim=" << trace.key_dim
     << " records=" << (trace.capture_records ? 1 : 0)
     << " full_dump=" << (trace.full_dump ? 1 : 0) << "\n";
  for (const CycleRecord& rec : trace.records) {
    os << "rec cycle=" << rec.cycle;
    os << " acc=";
    if (rec.acc_step >= 0) {
      os << rec.acc_step;
    } else {
      os << "-";
    }
    os << " ws=";
    if (rec.ws_step >= 0) {
      os << rec.ws_step;
    } else {
      os << "-";
    }
    os << " q=" << pack_hex(rec.q) << " k=" << pack_hex(rec.k) << " v=" << pack_hex(rec.v);
    if (rec.attn_d >= 0) {
      os << " d=" << rec.attn_d << " attn=" << pack_hex(rec.attn_bits);
    }
    if (!rec.s_bits.empty()) {
      os << " s=" << pack_hex(rec.s_bits);
    }
    if (!rec.counters.empty()) {
      os << " ctr=" << pack_hex_u8(rec.counters);
    }
    os << "\n";
  }
  os << "summary cycles=" << trace.cycles << " and_evals=" << trace.and_evals
     << " rng_draws=" << trace.rng_draws << " row_adds=" << trace.row_adds
     << " max_counter=" << static_cast<unsigned>(trace.max_counter) << "\n";
}

}  // namespace ssa
