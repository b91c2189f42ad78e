#include "simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>

#include "core/error.hpp"
#include "core/parallel.hpp"

namespace perikon {

namespace {
constexpr std::int64_t kChunk = 4096;
constexpr char kCheckpointMagic[8] = {'P', 'K', 'C', 'H', 'K', 'P', 'T', '\0'};
constexpr std::uint32_t kCheckpointVersion = 3;
}  // namespace

Simulation::Simulation(SimulationSetup setup)
    : lat_(std::move(setup.lattice)),
      phase_(std::move(setup.phases)),
      pinned_(std::move(setup.pinned)),
      failure_(setup.failure),
      eos_(setup.eos),
      eos_porosity_(setup.eos_porosity),
      eos_saturation_(setup.eos_saturation),
      influence_(setup.influence) {
    const std::size_t n = lat_.size();
    if (phase_.empty()) phase_.assign(n, Phase::Mortar);
    if (pinned_.empty()) pinned_.assign(n, 0);
    eos_.validate();
    failure_.dif.validate();

    bonds_ = build_bonds(lat_, phase_, setup.pore);

    pos_ = lat_.ref;
    vel_.assign(n, Vec3{});
    force_.assign(n, Vec3{});
    rho_.resize(n);
    bulk_.resize(n);
    shear_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const PhaseMaterial& mat = setup.material[static_cast<std::size_t>(phase_[i])];
        if (!(mat.moduli.bulk > 0.0 && mat.moduli.shear > 0.0 && mat.density > 0.0))
            throw ConfigError("phase material moduli and density must be positive");
        rho_[i] = mat.density;
        bulk_[i] = mat.moduli.bulk;
        shear_[i] = mat.moduli.shear;
    }

    theta_.assign(n, 0.0);
    pressure_.assign(n, 0.0);
    clamp_flag_.assign(n, 0);
    fp_.assign(n, ForcePoint{});

    compute_weighted_volume();
    if (setup.surface_correction) apply_surface_correction();

    intact_weight0_.assign(n, 0.0);
    par::for_each(static_cast<std::int64_t>(n), [&](std::int64_t ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        double w = 0.0;
        for (std::int64_t s = bonds_.begin(i); s < bonds_.end(i); ++s)
            if (bonds_.state[static_cast<std::size_t>(s)] == kBondIntact)
                w += bonds_.volw[static_cast<std::size_t>(s)];
        intact_weight0_[i] = w;
    });

    const std::int64_t nchunks = (static_cast<std::int64_t>(n) + kChunk - 1) / kChunk;
    candidates_.resize(static_cast<std::size_t>(nchunks));
}

void Simulation::attach_projectile(RigidBody body, ContactParams params) {
    projectile_ = std::move(body);
    contact_ = params;
}

void Simulation::enable_self_contact(ContactParams params) {
    self_contact_ = true;
    self_contact_params_ = params;
}

std::int64_t Simulation::clamp_event_count() const {
    std::int64_t c = 0;
    for (std::uint8_t f : clamp_flag_) c += f;
    return c;
}

void Simulation::compute_weighted_volume() {
    // Normalized over the bonds that mechanically exist at initialization:
    // pre-broken pore bonds never carried load, and the dilatation sums
    // the same intact set, so theta(eps x) = 3 eps holds at pre-damaged
    // points too. Points with no intact bonds are inert mass.
    const std::size_t n = lat_.size();
    m_.assign(n, 0.0);
    inv_m_.assign(n, 0.0);
    alpha_.assign(n, 0.0);
    const bool inv = influence_ == Influence::Inverse;
    const double delta = lat_.delta;
    bool any = false;
    for (std::size_t t = 0; t < bonds_.state.size() && !any; ++t)
        any = bonds_.state[t] == kBondIntact;
    if (!any) throw ModelError("no intact bonds anywhere: nothing to simulate");
    par::for_each(static_cast<std::int64_t>(n), [&](std::int64_t ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        double m = 0.0;
        for (std::int64_t s = bonds_.begin(i); s < bonds_.end(i); ++s) {
            const std::size_t t = static_cast<std::size_t>(s);
            if (bonds_.state[t] != kBondIntact) continue;
            const double xi = bonds_.xi[t];
            const double w = inv ? delta / xi : 1.0;
            m += w * xi * xi * bonds_.volw[t];
        }
        m_[i] = m;
        if (m > 0.0) {
            inv_m_[i] = 1.0 / m;
            alpha_[i] = 15.0 * shear_[i] / m;
        }
    });
}

void Simulation::apply_surface_correction() {
    // Energy calibration of the deviatoric constant: probe each point with
    // unit simple shear in the three coordinate planes and scale alpha so
    // the discrete deviatoric energy matches G/2 per unit shear squared.
    const std::size_t n = lat_.size();
    const bool inv = influence_ == Influence::Inverse;
    const double delta = lat_.delta;
    par::for_each(static_cast<std::int64_t>(n), [&](std::int64_t ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        double sum = 0.0;  // mean over the three shear planes of sum w (xi na nb)^2 volw
        for (std::int64_t s = bonds_.begin(i); s < bonds_.end(i); ++s) {
            const std::size_t t = static_cast<std::size_t>(s);
            if (bonds_.state[t] != kBondIntact) continue;
            const Vec3 d = lat_.ref[bonds_.nbr[t]] - lat_.ref[i];
            const double xi = bonds_.xi[t];
            const double w = inv ? delta / xi : 1.0;
            const double xi2 = xi * xi;
            sum += w * ((d.x * d.y) * (d.x * d.y) + (d.y * d.z) * (d.y * d.z) +
                        (d.z * d.x) * (d.z * d.x)) /
                   (3.0 * xi2) * bonds_.volw[t];
        }
        const double w_pd = 0.5 * alpha_[i] * sum;
        const double w_classical = 0.5 * shear_[i];
        if (w_pd > 0.0) alpha_[i] *= w_classical / w_pd;
    });
}

double Simulation::stable_timestep(double safety) const {
    double cmax = 0.0;
    for (std::size_t i = 0; i < lat_.size(); ++i) {
        const double c = std::sqrt((bulk_[i] + 4.0 * shear_[i] / 3.0) / rho_[i]);
        cmax = std::max(cmax, c);
    }
    return safety * lat_.dx / cmax;
}

template <bool kInverse>
void Simulation::pass_dilatation() {
    const std::size_t n = lat_.size();
    const double delta = lat_.delta;
    par::for_each(static_cast<std::int64_t>(n), [&](std::int64_t ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        const Vec3 yi = pos_[i];
        double th = 0.0;
        for (std::int64_t s = bonds_.begin(i); s < bonds_.end(i); ++s) {
            const std::size_t t = static_cast<std::size_t>(s);
            if (bonds_.state[t] != kBondIntact) continue;
            const double xi = bonds_.xi[t];
            const double e = norm(pos_[bonds_.nbr[t]] - yi) - xi;
            const double w = kInverse ? delta / xi : 1.0;
            th += w * xi * e * bonds_.volw[t];
        }
        th *= 3.0 * inv_m_[i];
        theta_[i] = th;
        bool clamped = false;
        const double p =
            point_pressure(th, bulk_[i], eos_porosity_, eos_saturation_, eos_, &clamped);
        if (clamped) clamp_flag_[i] = 1;
        pressure_[i] = p;
        fp_[i] = {-3.0 * p * inv_m_[i], alpha_[i], th, p};
    });
}

template <bool kInverse>
void Simulation::pass_force() {
    const std::size_t n = lat_.size();
    const double delta = lat_.delta;
    const bool check_failure = failure_.enabled;
    const double sat = failure_.saturation;
    // Beyond the crush pressure the volumetric response is pore collapse
    // handled by the EOS; severing bonds there would double-count it.
    // P_crush sits at the unconfined-failure mean stress (f_c / 3), so
    // unconfined compressive crushing still breaks bonds.
    const double confining = eos_.enabled ? eos_.p_crush : std::numeric_limits<double>::max();

    par::parallel_for(static_cast<std::int64_t>(n), [&](std::int64_t lo, std::int64_t hi) {
        auto& cand = candidates_[static_cast<std::size_t>(lo / kChunk)];
        for (std::int64_t ii = lo; ii < hi; ++ii) {
            const std::size_t i = static_cast<std::size_t>(ii);
            const Vec3 yi = pos_[i];
            const ForcePoint fi = fp_[i];
            Vec3 f{};
            for (std::int64_t s = bonds_.begin(i); s < bonds_.end(i); ++s) {
                const std::size_t t = static_cast<std::size_t>(s);
                if (bonds_.state[t] != kBondIntact) continue;
                const std::uint32_t j = bonds_.nbr[t];
                const Vec3 d = pos_[j] - yi;
                const double r = norm(d);
                const double xi = bonds_.xi[t];
                const double e = r - xi;
                const double w = kInverse ? delta / xi : 1.0;
                const ForcePoint fj = fp_[j];
                const double third = 1.0 / 3.0;
                const double ti = w * (fi.c_iso * xi + fi.alpha * (e - fi.theta * xi * third));
                const double tj = w * (fj.c_iso * xi + fj.alpha * (e - fj.theta * xi * third));
                const double volw = bonds_.volw[t];
                f += d * ((ti + tj) * volw / r);

                if (check_failure) {
                    const double stretch = e / xi;
                    const CriticalStretch& s0 =
                        failure_.s0[static_cast<std::size_t>(bonds_.kind[t])];
                    if (fi.pressure > confining && fj.pressure > confining)
                        bonds_.crushed[t] = 1;
                    const bool over_t = stretch >= s0.tensile;
                    const bool over_c =
                        !over_t && !bonds_.crushed[t] && stretch <= -s0.compressive;
                    if (over_t || over_c) {
                        // Freeze the DIF argument at the rate that first
                        // drove the bond past its static threshold. Both
                        // directed copies compute the same value.
                        double rate = bonds_.dif_rate[t];
                        if (rate < 0.0) {
                            const double opening = dot(vel_[j] - vel_[i], d) / (r * xi);
                            rate = std::max(0.0, over_t ? opening : -opening);
                            bonds_.dif_rate[t] = static_cast<float>(rate);
                        }
                        if (over_t) {
                            const double thr =
                                s0.tensile * dif_wet_tension(rate, sat, failure_.dif);
                            if (stretch >= thr)
                                cand.push_back({s, 0.5 * (ti + tj) * e * volw * lat_.volume(),
                                                static_cast<float>(
                                                    std::log10(std::max(rate, 1e-12))),
                                                1});
                        } else {
                            const double thr =
                                s0.compressive * dif_wet_compression(rate, sat,
                                                                     failure_.ft_over_fc,
                                                                     failure_.dif);
                            if (stretch <= -thr)
                                cand.push_back({s, 0.5 * (ti + tj) * e * volw * lat_.volume(),
                                                static_cast<float>(
                                                    std::log10(std::max(rate, 1e-12))),
                                                0});
                        }
                    }
                }
            }
            force_[i] = f;
        }
    });
}

void Simulation::refresh_forces() {
    if (influence_ == Influence::Inverse) {
        pass_dilatation<true>();
        pass_force<true>();
    } else {
        pass_dilatation<false>();
        pass_force<false>();
    }
    if (self_contact_) apply_self_contact();
    if (projectile_) apply_contact();
    apply_loads();
    forces_ready_ = true;
}

void Simulation::compute_dilatation() {
    if (influence_ == Influence::Inverse)
        pass_dilatation<true>();
    else
        pass_dilatation<false>();
}

void Simulation::apply_self_contact() {
    // Short-range repulsion over current positions. Each point accumulates
    // its own pair sum, so the pass is race-free and the pair force is
    // exactly antisymmetric.
    const ContactParams& p = self_contact_params_;
    const double reach = p.d_cross;
    CellList cells;
    cells.build(pos_, std::max(reach, 1e-12));
    const double vol = lat_.volume();
    const std::size_t n = lat_.size();
    par::for_each(static_cast<std::int64_t>(n), [&](std::int64_t ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        const Vec3 yi = pos_[i];
        Vec3 fi{};
        cells.for_neighbors(yi, reach, [&](std::uint32_t j) {
            if (j == static_cast<std::uint32_t>(ii)) return;
            const Vec3 d = yi - pos_[j];
            const double r = norm(d);
            if (r <= 1e-12) return;  // coincident same-body points: skip
            double d_pi = reach;
            const std::int64_t slot = bonds_.find_slot(i, j);
            if (slot >= 0)
                d_pi = std::min(0.9 * bonds_.xi[static_cast<std::size_t>(slot)], reach);
            const double mag = short_range_force_magnitude(r, d_pi, p);
            if (mag > 0.0) fi += d * (mag * vol / r);
        });
        force_[i] += fi;
    });
}

void Simulation::apply_contact() {
    RigidBody& body = *projectile_;
    body.force = {0.0, 0.0, 0.0};
    const std::size_t np = body.size();
    if (np == 0) return;

    // Current projectile node positions and their bounding box.
    std::vector<Vec3> nodes(np);
    Vec3 lo = body.node(0), hi = lo;
    for (std::size_t p = 0; p < np; ++p) {
        nodes[p] = body.node(p);
        lo.x = std::min(lo.x, nodes[p].x); hi.x = std::max(hi.x, nodes[p].x);
        lo.y = std::min(lo.y, nodes[p].y); hi.y = std::max(hi.y, nodes[p].y);
        lo.z = std::min(lo.z, nodes[p].z); hi.z = std::max(hi.z, nodes[p].z);
    }
    const double reach = contact_.d_cross;
    lo -= Vec3{reach, reach, reach};
    hi += Vec3{reach, reach, reach};

    CellList cells;
    cells.build(nodes, std::max(reach, 1e-12));

    const std::size_t n = lat_.size();
    std::vector<std::uint32_t> active;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& y = pos_[i];
        if (y.x < lo.x || y.y < lo.y || y.z < lo.z || y.x > hi.x || y.y > hi.y || y.z > hi.z)
            continue;
        active.push_back(static_cast<std::uint32_t>(i));
    }
    if (active.empty()) return;

    const Vec3 centroid = body.centroid();
    const double vol = lat_.volume();
    std::vector<Vec3> reaction(active.size(), Vec3{});
    par::for_each(static_cast<std::int64_t>(active.size()), [&](std::int64_t a) {
        const std::size_t i = active[static_cast<std::size_t>(a)];
        const Vec3 yi = pos_[i];
        Vec3 fi{};  // force density accumulated on the target point
        cells.for_neighbors(yi, reach, [&](std::uint32_t p) {
            const Vec3 d = yi - nodes[p];
            const double r = norm(d);
            const double mag = short_range_force_magnitude(r, contact_.d_cross, contact_);
            if (mag <= 0.0) return;
            Vec3 dir;
            if (r > 1e-12) {
                dir = d * (1.0 / r);
            } else {
                // Coincident points: push away from the body centroid, capped.
                const Vec3 c = yi - centroid;
                const double cn = norm(c);
                dir = cn > 1e-12 ? c * (1.0 / cn) : Vec3{0.0, 0.0, 1.0};
            }
            fi += dir * (mag * vol);
        });
        force_[i] += fi;
        reaction[static_cast<std::size_t>(a)] = fi * (-vol);
    });
    Vec3 net{};
    for (const Vec3& r : reaction) net += r;  // fixed target-id order
    body.force = net;
}

void Simulation::apply_loads() {
    for (const SurfaceLoad& load : loads_) {
        if (time_ >= load.t_end) continue;
        for (std::uint32_t i : load.points) force_[i] += load.force_density;
    }
}

void Simulation::half_kick(double half_dt) {
    const std::size_t n = lat_.size();
    par::for_each(static_cast<std::int64_t>(n), [&](std::int64_t ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        if (pinned_[i]) {
            vel_[i] = {0.0, 0.0, 0.0};
            return;
        }
        vel_[i] += force_[i] * (half_dt / rho_[i]);
    });
    if (projectile_) projectile_->vel += projectile_->force * (half_dt / projectile_->mass);
}

void Simulation::step(double dt) {
    // Forces must be current for the entering state; after the first
    // refresh they stay current because every step recomputes them.
    if (!forces_ready_) refresh_forces();

    half_kick(0.5 * dt);

    const std::size_t n = lat_.size();
    par::for_each(static_cast<std::int64_t>(n), [&](std::int64_t ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        pos_[i] += vel_[i] * dt;
    });
    if (projectile_) projectile_->nose += projectile_->vel * dt;

    // Work done by surface loads over the drift.
    for (const SurfaceLoad& load : loads_) {
        if (time_ >= load.t_end) continue;
        double w = 0.0;
        for (std::uint32_t i : load.points) w += dot(load.force_density, vel_[i]);
        external_work_ += w * lat_.volume() * dt;
    }

    refresh_forces();
    half_kick(0.5 * dt);
    commit_breaks();

    time_ += dt;
    ++step_;
}

void Simulation::commit_breaks() {
    for (auto& chunk : candidates_) {
        for (const BreakCandidate& c : chunk) {
            const std::size_t slot = static_cast<std::size_t>(c.slot);
            if (bonds_.state[slot] != kBondIntact) continue;  // mirror already committed
            const std::size_t i = bonds_.owner_of(c.slot);
            const std::uint32_t j = bonds_.nbr[slot];
            const std::int64_t mirror = bonds_.find_slot(j, static_cast<std::uint32_t>(i));
            bonds_.state[slot] = kBondBroken;
            if (mirror >= 0) bonds_.state[static_cast<std::size_t>(mirror)] = kBondBroken;
            ++broken_;
            dissipated_ += std::abs(c.energy);
            if (c.tension) {
                ++tension_breaks_;
                rate_log_sum_t_ += c.log10_rate;
            } else {
                ++compression_breaks_;
                rate_log_sum_c_ += c.log10_rate;
            }
        }
        chunk.clear();
    }
}

double Simulation::mean_break_rate_log10(bool tension) const {
    const std::int64_t n = tension ? tension_breaks_ : compression_breaks_;
    if (n == 0) return 0.0;
    return (tension ? rate_log_sum_t_ : rate_log_sum_c_) / static_cast<double>(n);
}

bool Simulation::state_finite() const {
    for (std::size_t i = 0; i < lat_.size(); ++i)
        if (!finite(pos_[i]) || !finite(vel_[i])) return false;
    if (projectile_ && (!finite(projectile_->nose) || !finite(projectile_->vel))) return false;
    return true;
}

double Simulation::strain_energy_density(std::size_t i) const {
    const bool inv = influence_ == Influence::Inverse;
    const double delta = lat_.delta;
    const Vec3 yi = pos_[i];
    double dev = 0.0;
    for (std::int64_t s = bonds_.begin(i); s < bonds_.end(i); ++s) {
        const std::size_t t = static_cast<std::size_t>(s);
        if (bonds_.state[t] != kBondIntact) continue;
        const double xi = bonds_.xi[t];
        const double e = norm(pos_[bonds_.nbr[t]] - yi) - xi;
        const double ed = e - theta_[i] * xi / 3.0;
        const double w = inv ? delta / xi : 1.0;
        dev += w * ed * ed * bonds_.volw[t];
    }
    return 0.5 * bulk_[i] * theta_[i] * theta_[i] + 0.5 * alpha_[i] * dev;
}

void Simulation::compute_damage(std::vector<double>& raw, std::vector<double>& rel) const {
    const std::size_t n = lat_.size();
    raw.assign(n, 0.0);
    rel.assign(n, 0.0);
    par::for_each(static_cast<std::int64_t>(n), [&](std::int64_t ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        double total = 0.0, intact = 0.0;
        for (std::int64_t s = bonds_.begin(i); s < bonds_.end(i); ++s) {
            const std::size_t t = static_cast<std::size_t>(s);
            total += bonds_.volw[t];
            if (bonds_.state[t] == kBondIntact) intact += bonds_.volw[t];
        }
        raw[i] = total > 0.0 ? 1.0 - intact / total : 1.0;
        rel[i] = intact_weight0_[i] > 0.0 ? 1.0 - intact / intact_weight0_[i] : 0.0;
    });
}

EnergyReport Simulation::energy() const {
    EnergyReport rep;
    const double vol = lat_.volume();
    rep.kinetic = par::deterministic_sum(static_cast<std::int64_t>(lat_.size()),
                                         [&](std::int64_t i) {
                                             const std::size_t p = static_cast<std::size_t>(i);
                                             return 0.5 * rho_[p] * vol * norm2(vel_[p]);
                                         });
    if (projectile_)
        rep.kinetic += 0.5 * projectile_->mass * norm2(projectile_->vel);
    // Strain energy needs current dilatation; callers refresh forces first.
    rep.strain = par::deterministic_sum(
        static_cast<std::int64_t>(lat_.size()),
        [&](std::int64_t i) { return strain_energy_density(static_cast<std::size_t>(i)) * vol; });
    rep.dissipated = dissipated_;
    rep.external_work = external_work_;
    return rep;
}

void Simulation::save_checkpoint(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write checkpoint: " + path);
    auto put = [&](const void* p, std::size_t bytes) {
        out.write(static_cast<const char*>(p), static_cast<std::streamsize>(bytes));
    };
    put(kCheckpointMagic, sizeof(kCheckpointMagic));
    put(&kCheckpointVersion, sizeof(kCheckpointVersion));
    const std::uint64_t step = static_cast<std::uint64_t>(step_);
    const std::uint64_t npoints = lat_.size();
    const std::uint64_t nbonds = static_cast<std::uint64_t>(bonds_.count());
    put(&step, sizeof(step));
    put(&npoints, sizeof(npoints));
    put(&nbonds, sizeof(nbonds));
    put(&time_, sizeof(time_));
    put(&broken_, sizeof(broken_));
    put(&dissipated_, sizeof(dissipated_));
    put(&external_work_, sizeof(external_work_));
    put(pos_.data(), npoints * sizeof(Vec3));
    put(vel_.data(), npoints * sizeof(Vec3));
    // Forces are stored so a restart continues bit-identically even when
    // bonds broke on the checkpointed step (the cached force array predates
    // the break commit).
    put(force_.data(), npoints * sizeof(Vec3));
    put(bonds_.state.data(), nbonds);
    put(bonds_.dif_rate.data(), nbonds * sizeof(float));
    put(bonds_.crushed.data(), nbonds);
    put(clamp_flag_.data(), npoints);
    const std::uint8_t has_proj = projectile_ ? 1 : 0;
    put(&has_proj, 1);
    if (projectile_) {
        put(&projectile_->nose, sizeof(Vec3));
        put(&projectile_->vel, sizeof(Vec3));
        put(&projectile_->force, sizeof(Vec3));
    }
    if (!out) throw IoError("checkpoint write failed: " + path);
}

void Simulation::load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open checkpoint: " + path);
    auto get = [&](void* p, std::size_t bytes) {
        in.read(static_cast<char*>(p), static_cast<std::streamsize>(bytes));
        if (!in) throw IoError("truncated checkpoint: " + path);
    };
    char magic[8];
    get(magic, sizeof(magic));
    if (std::memcmp(magic, kCheckpointMagic, sizeof(magic)) != 0)
        throw IoError("not a checkpoint file: " + path);
    std::uint32_t version;
    get(&version, sizeof(version));
    if (version != kCheckpointVersion)
        throw IoError("unsupported checkpoint version in " + path);
    std::uint64_t step, npoints, nbonds;
    get(&step, sizeof(step));
    get(&npoints, sizeof(npoints));
    get(&nbonds, sizeof(nbonds));
    if (npoints != lat_.size() || nbonds != static_cast<std::uint64_t>(bonds_.count()))
        throw IoError("checkpoint does not match this discretization: " + path);
    get(&time_, sizeof(time_));
    get(&broken_, sizeof(broken_));
    get(&dissipated_, sizeof(dissipated_));
    get(&external_work_, sizeof(external_work_));
    step_ = static_cast<std::int64_t>(step);
    get(pos_.data(), npoints * sizeof(Vec3));
    get(vel_.data(), npoints * sizeof(Vec3));
    get(force_.data(), npoints * sizeof(Vec3));
    get(bonds_.state.data(), nbonds);
    get(bonds_.dif_rate.data(), nbonds * sizeof(float));
    get(bonds_.crushed.data(), nbonds);
    get(clamp_flag_.data(), npoints);
    std::uint8_t has_proj;
    get(&has_proj, 1);
    if (has_proj) {
        if (!projectile_) throw IoError("checkpoint carries a projectile but none attached");
        get(&projectile_->nose, sizeof(Vec3));
        get(&projectile_->vel, sizeof(Vec3));
        get(&projectile_->force, sizeof(Vec3));
    }
    forces_ready_ = true;
}

template void Simulation::pass_dilatation<false>();
template void Simulation::pass_dilatation<true>();
template void Simulation::pass_force<false>();
template void Simulation::pass_force<true>();

}  // namespace perikon
