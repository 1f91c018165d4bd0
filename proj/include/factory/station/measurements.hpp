#pragma once

// Station one measurements in millimetres. Each constant is built from a few
// reference measurements: the station base and edges, then part edges, then
// sensor edges. Values marked "placeholder" were not measured and only keep
// the part geometry consistent with the sensor placements.
namespace factory::station::measure {

namespace width {
inline constexpr int kExtendRetractSensor = 32;
inline constexpr int kStackEjector = 85;  // placeholder
}  // namespace width

namespace depth {
inline constexpr int kExtendRetractSensor = 10;
inline constexpr int kStackEjector = 250;  // placeholder
}  // namespace depth

namespace z {
inline constexpr int kBase = 0;
inline constexpr int kStackEjectorBottom = kBase;
inline constexpr int kExtendRetractSensorBottom = kBase + 4;
inline constexpr int kExtendRetractSensorTop = kBase + 20;
}  // namespace z

namespace height {
inline constexpr int kExtendRetractSensor = z::kExtendRetractSensorTop - z::kExtendRetractSensorBottom;
inline constexpr int kStackEjector = 30;  // placeholder
}  // namespace height

namespace x {
inline constexpr int kStation1EdgeLeft = 0;
inline constexpr int kStackEjectorRight = kStation1EdgeLeft + 85;
inline constexpr int kStackEjectorLeft = kStackEjectorRight - width::kStackEjector;
inline constexpr int kExtendRetractSensorRight = kStackEjectorRight;
inline constexpr int kExtendRetractSensorLeft = kExtendRetractSensorRight - width::kExtendRetractSensor;
}  // namespace x

namespace y {
inline constexpr int kStation1EdgeFront = 0;
inline constexpr int kStackEjectorFront = kStation1EdgeFront + 76;
inline constexpr int kExtendSensorFront = kStackEjectorFront + 122;
inline constexpr int kExtendSensorBack = kExtendSensorFront + depth::kExtendRetractSensor;
inline constexpr int kRetractSensorFront = kStackEjectorFront + 236;
inline constexpr int kRetractSensorBack = kRetractSensorFront + depth::kExtendRetractSensor;
}  // namespace y

}  // namespace factory::station::measure
