#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <mutex>
#include <thread>
#include <vector>

namespace acgraph {

struct ReadJob {
  std::uint32_t block_id;
  std::uint64_t offset;  // bytes into the block file
  std::uint32_t bytes;   // multiple of 4096
  std::byte* dest;
};

struct ReadResult {
  std::uint32_t block_id;
  bool ok;
  int error;  // errno when !ok
};

/// Non-blocking block-read pipeline: submit() queues a read and returns;
/// harvest() drains whatever has completed. Executors drive both sides from
/// their scheduling loop, keeping reads overlapped with computation.
class BlockReader {
 public:
  virtual ~BlockReader() = default;
  virtual void submit(const ReadJob& job) = 0;
  virtual void harvest(std::vector<ReadResult>& out) = 0;
  virtual std::size_t in_flight() const = 0;
};

/// Portable implementation backed by a small pool of blocking pread workers.
/// With a single worker, completions arrive in submission order, which keeps
/// single-threaded runs reproducible.
class ThreadPoolReader final : public BlockReader {
 public:
  ThreadPoolReader(const std::filesystem::path& path, unsigned workers,
                   bool direct_io);
  ~ThreadPoolReader() override;

  void submit(const ReadJob& job) override;
  void harvest(std::vector<ReadResult>& out) override;
  std::size_t in_flight() const override {
    return pending_.load(std::memory_order_acquire);
  }

  bool direct_io_active() const { return direct_io_active_; }

 private:
  void worker_loop();

  int fd_ = -1;
  bool direct_io_active_ = false;
  std::atomic<std::size_t> pending_{0};
  std::atomic<bool> stop_{false};

  std::mutex job_mu_;
  std::condition_variable job_cv_;
  std::deque<ReadJob> jobs_;

  std::mutex done_mu_;
  std::deque<ReadResult> done_;

  std::vector<std::thread> workers_;
};

/// Synchronous convenience read of a run of blocks, used by tests and tools.
void read_block_run(const std::filesystem::path& path, std::uint32_t block_id,
                    std::uint32_t pages, std::byte* dest);

}  // namespace acgraph
