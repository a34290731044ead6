#include "abseed/antigen.hpp"

#include <stdexcept>
#include <string>

namespace abseed {

AntigenCode antigen_from_int(int code) {
    if (code < 0 || code >= kAntigenCount) throw std::out_of_range("antigen code " + std::to_string(code));
    return static_cast<AntigenCode>(code);
}

std::string_view antigen_name(AntigenCode c) {
    switch (c) {
        case AntigenCode::MarkerUnseen: return "Marker unseen";
        case AntigenCode::MarkerSeen: return "Marker seen";
        case AntigenCode::NearRight: return "Obstacle near right";
        case AntigenCode::NearRear: return "Obstacle near rear";
        case AntigenCode::NearLeft: return "Obstacle near left";
        case AntigenCode::CollisionRight: return "Collision right";
        case AntigenCode::CollisionRear: return "Collision rear";
        case AntigenCode::CollisionLeft: return "Collision left";
    }
    return "?";
}

DistanceBand band_of(int v_max) {
    if (v_max >= kCollisionThreshold) return DistanceBand::Collision;
    if (v_max >= kNearThreshold) return DistanceBand::Near;
    return DistanceBand::Clear;
}

Orientation orientation_of(int i_max) {
    if (i_max <= 2) return Orientation::Right;
    if (i_max <= 4) return Orientation::Rear;
    return Orientation::Left;
}

Percept Percept::from(const sim::IrReadings& ir, std::optional<sim::BlobView> blob) {
    Percept p;
    p.ir = ir;
    p.blob = std::move(blob);
    p.i_max = 0;
    p.v_max = ir[0];
    for (int i = 1; i < sim::kIrSensorCount; ++i) {
        if (ir[i] > p.v_max) {
            p.v_max = ir[i];
            p.i_max = i;
        }
    }
    return p;
}

AntigenCode classify(const Percept& p) {
    const DistanceBand band = band_of(p.v_max);
    if (band == DistanceBand::Clear) {
        return p.blob_present() ? AntigenCode::MarkerSeen : AntigenCode::MarkerUnseen;
    }
    const int base = band == DistanceBand::Near ? 2 : 5;
    return static_cast<AntigenCode>(base + static_cast<int>(orientation_of(p.i_max)));
}

}  // namespace abseed
