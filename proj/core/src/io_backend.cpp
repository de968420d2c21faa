#include "acgraph/io_backend.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "acgraph/error.hpp"
#include "acgraph/types.hpp"

namespace acgraph {

namespace {

// Full pread with EINTR/short-read handling.
bool pread_all(int fd, std::byte* dest, std::size_t bytes,
               std::uint64_t offset, int& err) {
  std::size_t done = 0;
  while (done < bytes) {
    const ssize_t got = ::pread(fd, dest + done, bytes - done,
                                static_cast<off_t>(offset + done));
    if (got < 0) {
      if (errno == EINTR) continue;
      err = errno;
      return false;
    }
    if (got == 0) {
      err = EIO;  // unexpected EOF inside the block region
      return false;
    }
    done += static_cast<std::size_t>(got);
  }
  return true;
}

}  // namespace

ThreadPoolReader::ThreadPoolReader(const std::filesystem::path& path,
                                   unsigned workers, bool direct_io) {
  if (direct_io) {
#ifdef O_DIRECT
    fd_ = ::open(path.c_str(), O_RDONLY | O_DIRECT);
    direct_io_active_ = fd_ >= 0;
#endif
  }
  if (fd_ < 0) {
    fd_ = ::open(path.c_str(), O_RDONLY);
    direct_io_active_ = false;
  }
  if (fd_ < 0) {
    throw IoError("cannot open " + path.string() + ": " +
                  std::strerror(errno));
  }
  if (workers == 0) workers = 1;
  workers_.reserve(workers);
  for (unsigned i = 0; i < workers; ++i) {
    workers_.emplace_back([this] { worker_loop(); });
  }
}

ThreadPoolReader::~ThreadPoolReader() {
  {
    std::lock_guard lock(job_mu_);
    stop_.store(true, std::memory_order_release);
  }
  job_cv_.notify_all();
  for (auto& w : workers_) w.join();
  if (fd_ >= 0) ::close(fd_);
}

void ThreadPoolReader::submit(const ReadJob& job) {
  pending_.fetch_add(1, std::memory_order_acq_rel);
  {
    std::lock_guard lock(job_mu_);
    jobs_.push_back(job);
  }
  job_cv_.notify_one();
}

void ThreadPoolReader::harvest(std::vector<ReadResult>& out) {
  std::lock_guard lock(done_mu_);
  while (!done_.empty()) {
    out.push_back(done_.front());
    done_.pop_front();
  }
}

void ThreadPoolReader::worker_loop() {
  for (;;) {
    ReadJob job;
    {
      std::unique_lock lock(job_mu_);
      job_cv_.wait(lock, [this] {
        return stop_.load(std::memory_order_acquire) || !jobs_.empty();
      });
      if (jobs_.empty()) return;  // stop requested and queue drained
      job = jobs_.front();
      jobs_.pop_front();
    }
    int err = 0;
    const bool ok = pread_all(fd_, job.dest, job.bytes, job.offset, err);
    {
      std::lock_guard lock(done_mu_);
      done_.push_back({job.block_id, ok, err});
    }
    pending_.fetch_sub(1, std::memory_order_acq_rel);
  }
}

void read_block_run(const std::filesystem::path& path, std::uint32_t block_id,
                    std::uint32_t pages, std::byte* dest) {
  const int fd = ::open(path.c_str(), O_RDONLY);
  if (fd < 0) {
    throw IoError("cannot open " + path.string() + ": " +
                  std::strerror(errno));
  }
  int err = 0;
  const bool ok =
      pread_all(fd, dest, static_cast<std::size_t>(pages) * kBlockBytes,
                static_cast<std::uint64_t>(block_id) * kBlockBytes, err);
  ::close(fd);
  if (!ok) {
    throw IoError("read failed on " + path.string() + ": " +
                  std::strerror(err));
  }
}

}  // namespace acgraph
